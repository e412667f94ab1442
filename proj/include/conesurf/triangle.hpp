#pragma once

// Extended hyperbolic triangles: each vertex is either a usual point of H^2
// or strictly hyperideal (represented by the pole of its dual line).
//
// Indexing: edge i joins vertices i+1 and i+2 (mod 3). The angle datum of a
// usual vertex is its interior angle; for a hyperideal vertex it is the
// length of the truncation arc cut on the dual line by the two incident
// edges.
//
// Sign conventions (all off-diagonal Gram entries negative):
//   usual-usual        <p,q> = -cosh l
//   usual-hyperideal   <p,u> = -sinh l   (p lies on the side <.,u> < 0)
//   hyperideal pair    <u,v> = -cosh l   (dual lines ultraparallel)
// and for the outward unit edge normals n_j, n_k meeting at vertex i
//   usual i            <n_j,n_k> = -cos(angle)
//   hyperideal i       <n_j,n_k> = -cosh(arc)
// With these conventions the Gram matrix of the vertex vectors is, after
// normalization, the inverse of the Gram matrix of the edge normals.
//
// Canonical position: edge 2 lies on the y-axis geodesic, vertex 1 on the
// y > 0 side of vertex 0, vertex 2 in the half-plane x > 0. Vertex 0 is the
// origin when usual; when hyperideal its dual line is the x-axis geodesic.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "conesurf/hkernel.hpp"

namespace conesurf {

enum class VertexKind { Usual, Hyperideal };

/// Which realizability rule validated the angle data.
enum class AngleRule {
  FromLengths,  // built from edge lengths; no angle rule applied
  Classical,    // three usual vertices: each angle in (0, pi), sum < pi
  Mixed,        // at least one hyperideal vertex: usual angles in (0, pi/2)
};

inline const char* to_string(VertexKind k) { return k == VertexKind::Usual ? "usual" : "hyperideal"; }
inline const char* to_string(AngleRule r) {
  switch (r) {
    case AngleRule::FromLengths: return "from-lengths";
    case AngleRule::Classical: return "classical";
    case AngleRule::Mixed: return "mixed";
  }
  return "unknown";
}

using Kinds = std::array<VertexKind, 3>;
using Triple = std::array<double, 3>;

inline constexpr double kGramEigenTol = 1e-10;

struct ExtendedTriangle {
  Kinds kinds{};
  std::array<HVector, 3> vertices{};
  Triple edge_lengths{};
  Triple angle_data{};
  AngleRule rule = AngleRule::FromLengths;

  bool usual(int i) const { return kinds[i] == VertexKind::Usual; }
  int hyperideal_count() const {
    int n = 0;
    for (auto k : kinds) n += (k == VertexKind::Hyperideal);
    return n;
  }

  Point vertex_point(int i) const { return Point(vertices[i]); }
  Pole vertex_pole(int i) const { return Pole(vertices[i]); }

  /// Outward unit normal of edge i (the triangle lies on the side <., n> < 0).
  Pole edge_pole(int i) const {
    const HVector& a = vertices[(i + 1) % 3];
    const HVector& b = vertices[(i + 2) % 3];
    Pole n = Pole::normalized(lorentz_cross(a, b));
    return inner(n.vec(), vertices[i]) > 0.0 ? n.flipped() : n;
  }

  /// Where edge `e` meets the dual line of hyperideal vertex `v`.
  Point foot(int v, int e) const { return intersection_point(vertex_pole(v), edge_pole(e)); }

  /// Area of the truncated triangle: pi minus the usual angles (truncation
  /// corners are right angles).
  double area() const {
    double a = kPi;
    for (int i = 0; i < 3; ++i)
      if (usual(i)) a -= angle_data[i];
    return a;
  }
};

namespace detail {

inline Mat3 primal_gram(const Kinds& kinds, const Triple& lengths) {
  Mat3 g;
  for (int i = 0; i < 3; ++i) g(i, i) = kinds[i] == VertexKind::Usual ? -1.0 : 1.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double v = kinds[j] == kinds[k] ? -std::cosh(lengths[i]) : -std::sinh(lengths[i]);
    g(j, k) = g(k, j) = v;
  }
  return g;
}

/// Requires signature (2,1) with every eigenvalue clear of zero.
inline void require_lorentzian(const Mat3& g, const char* what) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(g, Eigen::EigenvaluesOnly);
  const Vec3 ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  int neg = 0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(ev(i)) < kGramEigenTol * scale)
      throw Error(ErrorKind::Marginal, std::string(what) + " Gram matrix is numerically degenerate");
    neg += ev(i) < 0.0;
  }
  if (neg != 1) throw Error(ErrorKind::NonRealizable, std::string(what) + " Gram matrix does not have signature (2,1)");
}

inline void check_positive_finite(const Triple& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x) || x <= 0.0) throw Error(ErrorKind::Domain, std::string(what) + " must be positive and finite");
}

}  // namespace detail

/// Realizes the triangle with the given vertex kinds and edge lengths in
/// canonical position.
inline ExtendedTriangle solve_from_lengths(const Kinds& kinds, const Triple& lengths) {
  detail::check_positive_finite(lengths, "edge lengths");
  const Mat3 g = detail::primal_gram(kinds, lengths);
  detail::require_lorentzian(g, "vertex");

  ExtendedTriangle t;
  t.kinds = kinds;
  t.edge_lengths = lengths;
  t.rule = AngleRule::FromLengths;

  const double l2 = lengths[2];
  t.vertices[0] = kinds[0] == VertexKind::Usual ? HVector{0.0, 0.0, 1.0} : HVector{0.0, -1.0, 0.0};
  t.vertices[1] = kinds[1] == VertexKind::Usual ? HVector{0.0, std::sinh(l2), std::cosh(l2)}
                                                : HVector{0.0, std::cosh(l2), std::sinh(l2)};

  // Vertex 2 from its two inner products with the (x = 0) vertices.
  const HVector& a = t.vertices[0];
  const HVector& b = t.vertices[1];
  Eigen::Matrix2d m;
  m << a.y, -a.z, b.y, -b.z;
  const Eigen::Vector2d yz = m.fullPivLu().solve(Eigen::Vector2d(g(0, 2), g(1, 2)));
  const double x2 = g(2, 2) - yz(0) * yz(0) + yz(1) * yz(1);
  if (x2 <= kGramEigenTol * std::max(1.0, yz.squaredNorm()))
    throw Error(ErrorKind::Marginal, "third vertex is numerically on the first edge");
  t.vertices[2] = HVector{std::sqrt(x2), yz(0), yz(1)};
  if (kinds[2] == VertexKind::Usual && t.vertices[2].z <= 0.0)
    throw Error(ErrorKind::NonRealizable, "third vertex falls on the past sheet");

  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double c = -inner(t.edge_pole(j).vec(), t.edge_pole(k).vec());
    if (t.usual(i)) {
      if (!(c > -1.0 + kClampTol && c < 1.0 - kClampTol))
        throw Error(ErrorKind::NonRealizable, "edges through usual vertex " + std::to_string(i) + " do not meet");
      t.angle_data[i] = std::acos(c);
    } else {
      if (!(c > 1.0 + kClampTol))
        throw Error(ErrorKind::NonRealizable, "edges through hyperideal vertex " + std::to_string(i) + " are not ultraparallel");
      t.angle_data[i] = std::acosh(c);
      const double opp = std::abs(inner(t.vertices[i], t.edge_pole(i).vec()));
      if (!(opp > 1.0 + kClampTol))
        throw Error(ErrorKind::NonRealizable,
                    "dual line of vertex " + std::to_string(i) + " is not ultraparallel to the opposite edge");
    }
  }
  return t;
}

/// Edge lengths of the triangle with the given angle data, through the dual
/// Gram matrix of the edge normals. Applies the realizability ranges.
inline Triple lengths_from_angles(const Kinds& kinds, const Triple& data, AngleRule* rule_out = nullptr) {
  int hyper = 0;
  for (auto k : kinds) hyper += (k == VertexKind::Hyperideal);
  const AngleRule rule = hyper == 0 ? AngleRule::Classical : AngleRule::Mixed;

  double usual_sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double a = data[i];
    if (!std::isfinite(a) || a <= 0.0) throw Error(ErrorKind::Domain, "angle data must be positive and finite");
    if (kinds[i] == VertexKind::Usual) {
      const double cap = rule == AngleRule::Mixed ? kPi / 2.0 : kPi;
      if (a >= cap)
        throw Error(ErrorKind::Domain, rule == AngleRule::Mixed ? "usual angle must be below pi/2 when a vertex is hyperideal"
                                                                : "usual angle must be below pi");
      usual_sum += a;
    }
  }
  if (rule == AngleRule::Classical && usual_sum >= kPi) throw Error(ErrorKind::Domain, "angle sum must be below pi");

  Mat3 gs = Mat3::Identity();
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    gs(j, k) = gs(k, j) = kinds[i] == VertexKind::Usual ? -std::cos(data[i]) : -std::cosh(data[i]);
  }
  detail::require_lorentzian(gs, "edge-normal");
  const Mat3 w = gs.inverse();
  for (int i = 0; i < 3; ++i) {
    const bool timelike = w(i, i) < 0.0;
    if (timelike != (kinds[i] == VertexKind::Usual))
      throw Error(ErrorKind::NonRealizable, "angle data put vertex " + std::to_string(i) + " on the wrong side of the light cone");
  }
  Triple lengths{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double g = -w(j, k) / std::sqrt(std::abs(w(j, j) * w(k, k)));
    if (kinds[j] == kinds[k]) {
      if (!(g > 1.0 - kClampTol)) throw Error(ErrorKind::NonRealizable, "vertices " + std::to_string(j) + "," + std::to_string(k) + " not separated");
      lengths[i] = clamped_acosh(g);
    } else {
      if (!(g > 0.0)) throw Error(ErrorKind::NonRealizable, "usual vertex on the truncated side of a dual line");
      lengths[i] = std::asinh(g);
    }
  }
  if (rule_out) *rule_out = rule;
  return lengths;
}

inline ExtendedTriangle solve_from_angles(const Kinds& kinds, const Triple& data) {
  AngleRule rule{};
  ExtendedTriangle t = solve_from_lengths(kinds, lengths_from_angles(kinds, data, &rule));
  t.rule = rule;
  return t;
}

struct BoundarySegment {
  enum class Kind { Edge, TruncationArc };
  Kind kind;
  int index;  // edge index or hyperideal vertex index
  double length;
  HVector start;
  HVector end;
};

struct TriangleData {
  Triple lengths{};
  Triple angle_data{};
  std::vector<BoundarySegment> truncated_boundary;
};

/// Walks the truncated polygon v0 -> v1 -> v2 and recomputes every segment
/// length from the segment endpoints.
inline TriangleData extract_data(const ExtendedTriangle& t) {
  TriangleData out;
  out.lengths = t.edge_lengths;
  out.angle_data = t.angle_data;
  // Endpoint of edge e at vertex v: the vertex itself or the foot on its dual.
  auto endpoint = [&](int v, int e) { return t.usual(v) ? t.vertex_point(v) : t.foot(v, e); };
  for (int i = 0; i < 3; ++i) {
    const int incoming = (i + 1) % 3;
    const int outgoing = (i + 2) % 3;
    if (!t.usual(i)) {
      const Point a = t.foot(i, incoming), b = t.foot(i, outgoing);
      out.truncated_boundary.push_back(
          {BoundarySegment::Kind::TruncationArc, i, dist_point_point(a, b), a.vec(), b.vec()});
    }
    const Point a = endpoint(i, outgoing), b = endpoint((i + 1) % 3, outgoing);
    out.truncated_boundary.push_back({BoundarySegment::Kind::Edge, outgoing, dist_point_point(a, b), a.vec(), b.vec()});
  }
  return out;
}

}  // namespace conesurf
