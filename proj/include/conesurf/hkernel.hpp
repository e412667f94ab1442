#pragma once

// Hyperboloid-model primitives in Minkowski space R^{2,1}.
//
// The bilinear form is <u,v> = u.x v.x + u.y v.y - u.z v.z. Points of the
// hyperbolic plane are future time-like unit vectors (<p,p> = -1, z > 0);
// a geodesic is represented by a space-like unit pole u (<u,u> = +1), the
// geodesic being u^perp intersected with the hyperboloid. A pole is also the
// vector form of a strictly hyperideal vertex.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "conesurf/errors.hpp"

namespace conesurf {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kClampTol = 1e-10;
inline constexpr double kFormTol = 1e-10;
inline constexpr double kParabolicTol = 1e-9;

struct HVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr HVector() = default;
  constexpr HVector(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
  explicit HVector(const Vec3& v) : x(v(0)), y(v(1)), z(v(2)) {}

  Vec3 vec() const { return {x, y, z}; }
  double euclidean_norm2() const { return x * x + y * y + z * z; }

  friend HVector operator+(HVector a, HVector b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend HVector operator-(HVector a, HVector b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend HVector operator*(double s, HVector a) { return {s * a.x, s * a.y, s * a.z}; }
  friend HVector operator-(HVector a) { return {-a.x, -a.y, -a.z}; }
};

inline double inner(const HVector& u, const HVector& v) { return u.x * v.x + u.y * v.y - u.z * v.z; }
inline double inner(const Vec3& u, const Vec3& v) { return u(0) * v(0) + u(1) * v(1) - u(2) * v(2); }

inline const Mat3& form_matrix() {
  static const Mat3 J = Vec3(1.0, 1.0, -1.0).asDiagonal();
  return J;
}

/// Vector orthogonal (for the form) to both arguments.
inline HVector lorentz_cross(const HVector& a, const HVector& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, -(a.x * b.y - a.y * b.x)};
}

/// arccosh that tolerates arguments a hair below 1.
inline double clamped_acosh(double c) {
  if (c < 1.0) {
    if (c > 1.0 - kClampTol) return 0.0;
    throw Error(ErrorKind::Domain, "arccosh argument " + std::to_string(c) + " below 1");
  }
  return std::acosh(c);
}

inline double clamped_acos(double c) {
  if (c > 1.0) {
    if (c < 1.0 + kClampTol) return 0.0;
    throw Error(ErrorKind::Domain, "arccos argument above 1");
  }
  if (c < -1.0) {
    if (c > -1.0 - kClampTol) return kPi;
    throw Error(ErrorKind::Domain, "arccos argument below -1");
  }
  return std::acos(c);
}

namespace detail {
inline bool near_norm(const HVector& v, double target) {
  const double scale = std::max(1.0, v.euclidean_norm2());
  return std::abs(inner(v, v) - target) <= kNormTol * scale;
}
}  // namespace detail

/// A point of the hyperbolic plane.
class Point {
 public:
  /// Validates normalization; throws a domain error otherwise.
  explicit Point(const HVector& v) : v_(v) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z) || v.z <= 0.0 ||
        !detail::near_norm(v, -1.0))
      throw Error(ErrorKind::Domain, "vector is not a normalized future time-like point");
  }
  /// Rescales a future time-like vector onto the hyperboloid.
  static Point normalized(const HVector& v) {
    const double n = inner(v, v);
    if (!(n < 0.0)) throw Error(ErrorKind::Domain, "vector is not time-like");
    const double s = (v.z > 0.0 ? 1.0 : -1.0) / std::sqrt(-n);
    return Point(s * v);
  }
  static Point origin() { return Point(HVector{0.0, 0.0, 1.0}); }

  const HVector& vec() const { return v_; }

 private:
  HVector v_;
};

/// A geodesic, given by its space-like unit pole.
class Pole {
 public:
  explicit Pole(const HVector& v) : v_(v) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z) || !detail::near_norm(v, 1.0))
      throw Error(ErrorKind::Domain, "vector is not a normalized space-like pole");
  }
  static Pole normalized(const HVector& v) {
    const double n = inner(v, v);
    if (!(n > 0.0)) throw Error(ErrorKind::Domain, "vector is not space-like");
    return Pole((1.0 / std::sqrt(n)) * v);
  }
  Pole flipped() const { return Pole(-v_); }

  const HVector& vec() const { return v_; }

 private:
  HVector v_;
};

inline double dist_point_point(const Point& p, const Point& q) { return clamped_acosh(-inner(p.vec(), q.vec())); }

inline double dist_point_line(const Point& p, const Pole& u) { return std::asinh(std::abs(inner(p.vec(), u.vec()))); }

struct LineRelation {
  enum class Kind { Intersecting, Asymptotic, Ultraparallel };
  Kind kind;
  double value;  // angle for Intersecting, distance for Ultraparallel, 0 otherwise
};

inline LineRelation line_line_relation(const Pole& u, const Pole& v) {
  const HVector d1 = u.vec() - v.vec();
  const HVector d2 = u.vec() + v.vec();
  if (d1.euclidean_norm2() < 1e-24 || d2.euclidean_norm2() < 1e-24)
    throw Error(ErrorKind::Degenerate, "poles coincide up to sign");
  const double c = std::abs(inner(u.vec(), v.vec()));
  if (std::abs(c - 1.0) <= kClampTol) return {LineRelation::Kind::Asymptotic, 0.0};
  if (c < 1.0) return {LineRelation::Kind::Intersecting, std::acos(c)};
  return {LineRelation::Kind::Ultraparallel, std::acosh(c)};
}

enum class IsometryClass { Identity, Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(IsometryClass c) {
  switch (c) {
    case IsometryClass::Identity: return "identity";
    case IsometryClass::Elliptic: return "elliptic";
    case IsometryClass::Parabolic: return "parabolic";
    case IsometryClass::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

/// Form-preserving linear map that keeps the upper sheet of the hyperboloid.
/// Reflections (determinant -1) are representable; translation lengths are
/// only defined for the orientation-preserving ones.
class Isometry {
 public:
  Isometry() : m_(Mat3::Identity()), known_preserving_(true) {}
  explicit Isometry(const Mat3& m) : m_(m) {
    const Mat3& J = form_matrix();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff());
    if (!m.allFinite() || ((m.transpose() * J * m - J).cwiseAbs().maxCoeff() > kFormTol * scale))
      throw Error(ErrorKind::Domain, "matrix does not preserve the Minkowski form");
    if (m(2, 2) <= 0.0) throw Error(ErrorKind::Domain, "matrix swaps the sheets of the hyperboloid");
    known_preserving_ = orientation_preserving();
  }
  static Isometry unchecked(const Mat3& m) {
    Isometry r;
    r.m_ = m;
    r.known_preserving_ = false;
    return r;
  }
  /// Unchecked product of orientation-preserving factors; the orientation is
  /// then known exactly instead of being read off rounded entries.
  static Isometry unchecked_rotation(const Mat3& m) {
    Isometry r;
    r.m_ = m;
    r.known_preserving_ = true;
    return r;
  }

  const Mat3& matrix() const { return m_; }
  Isometry inverse() const {
    Isometry r = unchecked(form_matrix() * m_.transpose() * form_matrix());
    r.known_preserving_ = known_preserving_;
    return r;
  }
  /// Sign of the determinant, read off the rotation part M = B K where B is
  /// the pure boost taking the origin to M(origin). K has entries of order 1
  /// even when M is huge, where det(M) itself drowns in cancellation.
  bool orientation_preserving() const {
    if (known_preserving_) return true;
    const Vec3 p = m_.col(2);
    const double s = 1.0 / (1.0 + p(2));
    Mat3 b;
    b << 1.0 + p(0) * p(0) * s, p(0) * p(1) * s, p(0),
         p(0) * p(1) * s, 1.0 + p(1) * p(1) * s, p(1),
         p(0), p(1), p(2);
    const Mat3 k = form_matrix() * b.transpose() * form_matrix() * m_;
    return k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0) > 0.0;
  }

  HVector apply(const HVector& v) const { return HVector(Vec3(m_ * v.vec())); }
  Point apply(const Point& p) const { return Point::normalized(apply(p.vec())); }
  Pole apply(const Pole& u) const { return Pole::normalized(apply(u.vec())); }

  friend Isometry operator*(const Isometry& a, const Isometry& b) {
    Isometry r = unchecked(a.m_ * b.m_);
    r.known_preserving_ = a.known_preserving_ && b.known_preserving_;
    return r;
  }

 private:
  Mat3 m_;
  bool known_preserving_ = false;
};

struct TranslationLength {
  double length;
  IsometryClass cls;
};

inline IsometryClass classify(const Isometry& m) {
  const double tr = m.matrix().trace();
  if (std::abs(tr - 3.0) < kParabolicTol) {
    return (m.matrix() - Mat3::Identity()).cwiseAbs().maxCoeff() < kParabolicTol ? IsometryClass::Identity
                                                                                 : IsometryClass::Parabolic;
  }
  return tr < 3.0 ? IsometryClass::Elliptic : IsometryClass::Hyperbolic;
}

inline TranslationLength translation_length(const Isometry& m) {
  if (!m.orientation_preserving()) throw Error(ErrorKind::Domain, "orientation-reversing isometry");
  const IsometryClass cls = classify(m);
  if (cls != IsometryClass::Hyperbolic) return {0.0, cls};
  return {std::acosh((m.matrix().trace() - 1.0) / 2.0), cls};
}

/// Area of a hyperbolic triangle from its angles (angle defect).
inline double triangle_area(const std::array<double, 3>& angles) {
  double sum = 0.0;
  for (double a : angles) {
    if (!(a >= 0.0 && a < kPi)) throw Error(ErrorKind::Domain, "triangle angle outside [0, pi)");
    sum += a;
  }
  if (sum >= kPi) throw Error(ErrorKind::NotHyperbolic, "angle sum is at least pi");
  return kPi - sum;
}

// Standard isometries. The reference geodesic is the y-axis geodesic
// {(0, sinh t, cosh t)} with pole (1, 0, 0); the reference point is the origin.

/// Translation by `s` along the y-axis geodesic.
inline Mat3 translation_y(double s) {
  Mat3 m = Mat3::Identity();
  const double c = std::cosh(s), h = std::sinh(s);
  m(1, 1) = c;
  m(1, 2) = h;
  m(2, 1) = h;
  m(2, 2) = c;
  return m;
}

/// Translation by `s` along the x-axis geodesic.
inline Mat3 translation_x(double s) {
  Mat3 m = Mat3::Identity();
  const double c = std::cosh(s), h = std::sinh(s);
  m(0, 0) = c;
  m(0, 2) = h;
  m(2, 0) = h;
  m(2, 2) = c;
  return m;
}

/// Rotation by `a` about the origin.
inline Mat3 rotation(double a) {
  Mat3 m = Mat3::Identity();
  const double c = std::cos(a), s = std::sin(a);
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return m;
}

/// Reflection in the geodesic with pole `u`.
inline Mat3 reflection(const Pole& u) {
  const Vec3 n = u.vec().vec();
  return Mat3::Identity() - 2.0 * n * (form_matrix() * n).transpose();
}

/// Meeting point of two intersecting geodesics.
inline Point intersection_point(const Pole& a, const Pole& b) {
  return Point::normalized(lorentz_cross(a.vec(), b.vec()));
}

}  // namespace conesurf
