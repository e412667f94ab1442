#pragma once

// Singular pairs of pants: two copies of a truncated triangle glued along
// the three edges (the seams). A boundary leg of length L is a hyperideal
// vertex whose truncation arc has length L/2; a cone leg of angle theta is a
// usual vertex of angle theta/2.
//
// Positions along a boundary leg p run from 0 at the foot of seam p+1 to L/2
// at the foot of seam p+2 on the front copy, and on to L along the back copy.
// The leg frame F_p maps the standard y-axis geodesic onto leg p with the
// origin at position 0, +y in the direction of increasing position and the
// pants interior on the x > 0 side.

#include <array>
#include <optional>
#include <string>

#include "conesurf/triangle.hpp"

namespace conesurf {

struct Leg {
  enum class Kind { Boundary, Cone };
  Kind kind = Kind::Boundary;
  double value = 0.0;  // length or angle

  static Leg boundary(double length) { return {Kind::Boundary, length}; }
  static Leg cone(double angle) { return {Kind::Cone, angle}; }

  bool is_boundary() const { return kind == Kind::Boundary; }
  bool is_cone() const { return kind == Kind::Cone; }

  friend bool operator==(const Leg&, const Leg&) = default;
};

inline std::string to_string(const Leg& l) {
  return std::string(l.is_boundary() ? "boundary:" : "cone:") + std::to_string(l.value);
}

inline void validate_leg(const Leg& l) {
  if (!std::isfinite(l.value)) throw Error(ErrorKind::Domain, "leg value must be finite");
  if (l.is_boundary() && l.value <= 0.0) throw Error(ErrorKind::Domain, "boundary length must be positive");
  if (l.is_cone() && !(l.value > 0.0 && l.value < kPi))
    throw Error(ErrorKind::Domain, "cone angle " + std::to_string(l.value) + " outside (0, pi)");
}

/// Geometry helpers use these fixed matrices.
inline const Mat3& half_turn() {
  static const Mat3 m = Vec3(-1.0, -1.0, 1.0).asDiagonal();
  return m;
}
inline const Mat3& flip_y() {
  static const Mat3 m = Vec3(1.0, -1.0, 1.0).asDiagonal();
  return m;
}

class SingularPants {
 public:
  std::array<Leg, 3> legs{};
  ExtendedTriangle triangle;
  Triple seams{};

  double area() const { return 2.0 * triangle.area(); }
  int boundary_count() const {
    int n = 0;
    for (const auto& l : legs) n += l.is_boundary();
    return n;
  }

  /// Seam slot whose foot marks the zero position of boundary leg p: the
  /// seam to the lowest-slot other boundary leg, else to the lowest-slot
  /// other leg.
  int marked_partner(int p) const {
    const int a = std::min((p + 1) % 3, (p + 2) % 3);
    const int b = std::max((p + 1) % 3, (p + 2) % 3);
    if (legs[a].is_boundary()) return a;
    if (legs[b].is_boundary()) return b;
    return a;
  }
  /// Position of the marked seam foot on boundary leg p.
  double marked_position(int p) const {
    require_boundary(p);
    return marked_partner(p) == (p + 1) % 3 ? legs[p].value / 2.0 : 0.0;
  }

  const Mat3& leg_frame(int p) const {
    require_boundary(p);
    return *frames_[p];
  }
  const Mat3& edge_reflection(int e) const { return reflections_[e]; }

  // The holonomy pieces below are written in leg frames directly from the
  // leg data and seam lengths. Composing developed frames instead loses about
  // eps * e^(2d) for legs at distance d from the canonical origin.

  /// Frame change for an arc entering through leg p and leaving through leg q:
  /// along p to the seam foot, across the seam, half turn onto q.
  Mat3 traversal(int p, int q) const {
    if (p == q) return u_turn(p, 1);
    require_boundary(p);
    require_boundary(q);
    if (q == (p + 1) % 3) return translation_y(legs[p].value / 2.0) * translation_x(seams[(p + 2) % 3]) * half_turn();
    return translation_x(seams[(p + 1) % 3]) * half_turn() * translation_y(-legs[q].value / 2.0);
  }
  /// Arc from leg p back to itself, crossing the seam between the two other
  /// legs; `turn` = -1 runs it from the back copy to the front.
  Mat3 u_turn(int p, int turn) const {
    const Mat3 u = reflection(opposite_edge_pole(p)) * flip_y();
    return turn >= 0 ? u : Mat3(form_matrix() * u.transpose() * form_matrix());
  }
  /// Holonomy of boundary leg p in its own frame: a translation by L.
  Mat3 peripheral(int p) const {
    require_boundary(p);
    return translation_y(legs[p].value);
  }

 private:
  friend SingularPants build_pants(const std::array<Leg, 3>&);

  void require_boundary(int p) const {
    if (p < 0 || p > 2 || !legs[p].is_boundary())
      throw Error(ErrorKind::Domain, "leg " + std::to_string(p) + " is not a boundary leg");
  }
  /// Outward pole of edge p in the frame of leg p. The adjacent edges have
  /// poles (0, -1, 0) and (0, cosh h, sinh h) there, h = L/2, and meet edge p
  /// at the data of legs p+2 and p+1; the x component is fixed by
  /// normalization, with c - b expanded to avoid cancellation.
  Pole opposite_edge_pole(int p) const {
    require_boundary(p);
    auto corner = [](const Leg& l) { return l.is_boundary() ? std::cosh(l.value / 2.0) : std::cos(l.value / 2.0); };
    const double h = legs[p].value / 2.0;
    const double b = corner(legs[(p + 2) % 3]), c1 = corner(legs[(p + 1) % 3]);
    const double c = (b * std::cosh(h) + c1) / std::sinh(h);
    const double c_minus_b = (b * std::exp(-h) + c1) / std::sinh(h);
    return Pole::normalized({std::sqrt(1.0 + c_minus_b * (c + b)), b, c});
  }

  std::array<std::optional<Mat3>, 3> frames_{};
  std::array<Mat3, 3> reflections_{};
};

inline SingularPants build_pants(const std::array<Leg, 3>& legs) {
  Kinds kinds{};
  Triple data{};
  double cone_sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    validate_leg(legs[i]);
    kinds[i] = legs[i].is_boundary() ? VertexKind::Hyperideal : VertexKind::Usual;
    data[i] = legs[i].value / 2.0;
    if (legs[i].is_cone()) cone_sum += legs[i].value;
  }
  if (legs[0].is_cone() && legs[1].is_cone() && legs[2].is_cone() && cone_sum >= 2.0 * kPi)
    throw Error(ErrorKind::NotHyperbolic, "three cone legs with angle sum at least 2 pi");

  SingularPants p;
  p.legs = legs;
  p.triangle = solve_from_angles(kinds, data);
  p.seams = p.triangle.edge_lengths;
  for (int e = 0; e < 3; ++e) p.reflections_[e] = reflection(p.triangle.edge_pole(e));
  for (int i = 0; i < 3; ++i) {
    if (!legs[i].is_boundary()) continue;
    const Point f0 = p.triangle.foot(i, (i + 1) % 3);
    const Point f1 = p.triangle.foot(i, (i + 2) % 3);
    const Vec3 a = f0.vec().vec(), b = f1.vec().vec();
    const Vec3 t = b + inner(a, b) * a;  // component of f1 tangent at f0
    Mat3 f;
    f.col(0) = -p.triangle.vertices[i].vec();
    f.col(1) = t / std::sqrt(inner(t, t));
    f.col(2) = a;
    p.frames_[i] = f;
  }
  return p;
}

/// The legs as stored at construction.
inline std::array<Leg, 3> leg_invariants(const SingularPants& p) { return p.legs; }

/// The legs recomputed from the developed triangle.
inline std::array<Leg, 3> recomputed_leg_invariants(const SingularPants& p) {
  std::array<Leg, 3> out{};
  const TriangleData td = extract_data(p.triangle);
  for (int i = 0; i < 3; ++i) {
    if (p.triangle.usual(i)) {
      const double c = -inner(p.triangle.edge_pole((i + 1) % 3).vec(), p.triangle.edge_pole((i + 2) % 3).vec());
      out[i] = Leg::cone(2.0 * clamped_acos(c));
    } else {
      for (const auto& seg : td.truncated_boundary)
        if (seg.kind == BoundarySegment::Kind::TruncationArc && seg.index == i) out[i] = Leg::boundary(2.0 * seg.length);
    }
  }
  return out;
}

/// Seam i is the shortest path between legs i+1 and i+2, recomputed from the
/// realizing vectors.
inline Triple seam_lengths(const SingularPants& p) {
  const ExtendedTriangle& t = p.triangle;
  Triple out{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (!t.usual(j) && !t.usual(k)) {
      out[i] = line_line_relation(t.vertex_pole(j), t.vertex_pole(k)).value;
    } else if (t.usual(j) && t.usual(k)) {
      out[i] = dist_point_point(t.vertex_point(j), t.vertex_point(k));
    } else {
      const int u = t.usual(j) ? j : k, h = t.usual(j) ? k : j;
      out[i] = dist_point_line(t.vertex_point(u), t.vertex_pole(h));
    }
  }
  return out;
}

}  // namespace conesurf
