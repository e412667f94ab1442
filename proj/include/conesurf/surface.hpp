#pragma once

// Marked cone surfaces, pants decompositions and Fenchel-Nielsen assembly.
//
// Twist convention: for internal curve i glued between boundary legs X and Y
// with marked positions m_X, m_Y (the seam feet of each pants), a point at
// position s_X on X is identified with the point at position s_Y on Y where
//   s_Y - m_Y = d_i - (s_X - m_X).
// d_i = 0 aligns the two seam feet; d_i = l_i is one full Dehn twist. The
// relation is symmetric in X and Y, so the sign of d_i does not depend on
// which side is listed first.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "conesurf/pants.hpp"

namespace conesurf {

struct MarkedSurface {
  int genus = 0;
  std::vector<double> cone_angles;

  int euler_characteristic() const { return 2 - 2 * genus; }
  int cone_count() const { return static_cast<int>(cone_angles.size()); }
};

/// Sum of (2 pi - theta_i) minus 2 pi chi: the hyperbolic area of any cone
/// metric on the surface. Throws when not positive.
inline double admissible_area(const MarkedSurface& s) {
  if (s.genus < 0) throw Error(ErrorKind::Domain, "genus must be nonnegative");
  double a = -2.0 * kPi * s.euler_characteristic();
  for (double th : s.cone_angles) {
    if (!(th > 0.0 && th < kPi)) throw Error(ErrorKind::Domain, "cone angle outside (0, pi)");
    a += 2.0 * kPi - th;
  }
  if (!(a > 0.0)) throw InadmissibleError(a, "Gauss-Bonnet area " + std::to_string(a) + " is not positive");
  return a;
}

struct LegRef {
  enum class Kind { Curve, Cone };
  Kind kind = Kind::Curve;
  int index = 0;

  static LegRef curve(int i) { return {Kind::Curve, i}; }
  static LegRef cone(int i) { return {Kind::Cone, i}; }
  bool is_curve() const { return kind == Kind::Curve; }

  friend bool operator==(const LegRef&, const LegRef&) = default;
};

struct Piece {
  std::string id;
  std::array<LegRef, 3> legs{};
};

struct PantsDecomposition {
  std::vector<std::string> curves;
  std::vector<Piece> pieces;

  int curve_count() const { return static_cast<int>(curves.size()); }
  int piece_count() const { return static_cast<int>(pieces.size()); }

  int curve_index(const std::string& name) const {
    auto it = std::find(curves.begin(), curves.end(), name);
    return it == curves.end() ? -1 : static_cast<int>(it - curves.begin());
  }
  int piece_index(const std::string& id) const {
    for (int i = 0; i < piece_count(); ++i)
      if (pieces[i].id == id) return i;
    return -1;
  }
};

struct FNCoordinates {
  std::vector<double> lengths;
  std::vector<double> twists;
};

/// A (piece, slot) pair naming one side of an internal curve.
struct CurveSide {
  int piece = -1;
  int slot = -1;
  friend bool operator==(const CurveSide&, const CurveSide&) = default;
  friend auto operator<=>(const CurveSide&, const CurveSide&) = default;
};

struct TopologyReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

inline TopologyReport validate_topology(const PantsDecomposition& d, const MarkedSurface& s) {
  TopologyReport r;
  auto issue = [&](std::string m) { r.issues.push_back(std::move(m)); };
  const int g = s.genus, n0 = s.cone_count();
  const int N = d.curve_count(), P = d.piece_count();

  if (g < 0) issue("genus " + std::to_string(g) + " is negative");
  if (N != 3 * g - 3 + n0)
    issue("expected " + std::to_string(3 * g - 3 + n0) + " internal curves, found " + std::to_string(N));
  if (P != 2 * g - 2 + n0) issue("expected " + std::to_string(2 * g - 2 + n0) + " pieces, found " + std::to_string(P));
  if (3 * P != 2 * N + n0)
    issue("slot count 3P = " + std::to_string(3 * P) + " differs from 2N + n0 = " + std::to_string(2 * N + n0));

  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (d.curves[i] == d.curves[j]) issue("curve name '" + d.curves[i] + "' repeated");
  for (int i = 0; i < P; ++i)
    for (int j = i + 1; j < P; ++j)
      if (d.pieces[i].id == d.pieces[j].id) issue("piece id '" + d.pieces[i].id + "' repeated");

  std::vector<int> curve_uses(N, 0), cone_uses(n0, 0);
  // Union-find over pieces for connectivity.
  std::vector<int> parent(P);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> first_piece(N, -1);

  for (int pi = 0; pi < P; ++pi) {
    const Piece& pc = d.pieces[pi];
    int cones = 0;
    for (int slot = 0; slot < 3; ++slot) {
      const LegRef& ref = pc.legs[slot];
      const std::string where = "piece '" + pc.id + "' slot " + std::to_string(slot);
      if (ref.is_curve()) {
        if (ref.index < 0 || ref.index >= N) {
          issue(where + " references unknown curve " + std::to_string(ref.index));
          continue;
        }
        ++curve_uses[ref.index];
        if (first_piece[ref.index] < 0)
          first_piece[ref.index] = pi;
        else
          parent[find(pi)] = find(first_piece[ref.index]);
      } else {
        ++cones;
        if (ref.index < 0 || ref.index >= n0) {
          issue(where + " references unknown cone point " + std::to_string(ref.index));
          continue;
        }
        ++cone_uses[ref.index];
      }
    }
    if (cones > 2) issue("piece '" + pc.id + "' has three cone legs");
  }
  for (int i = 0; i < N; ++i)
    if (curve_uses[i] != 2)
      issue("curve '" + d.curves[i] + "' used " + std::to_string(curve_uses[i]) + " times, expected 2");
  for (int i = 0; i < n0; ++i)
    if (cone_uses[i] != 1)
      issue("cone point " + std::to_string(i) + " used " + std::to_string(cone_uses[i]) + " times, expected 1");
  for (int pi = 1; pi < P; ++pi)
    if (find(pi) != find(0)) {
      issue("decomposition is disconnected");
      break;
    }
  return r;
}

inline void require_topology(const PantsDecomposition& d, const MarkedSurface& s) {
  TopologyReport r = validate_topology(d, s);
  if (!r.ok()) throw TopologyError(std::move(r.issues));
}

struct Gluing {
  CurveSide a;  // lower (piece, slot)
  CurveSide b;
  double length = 0.0;
  double twist = 0.0;
  double mark_a = 0.0;
  double mark_b = 0.0;
};

struct SurfaceGeometry {
  MarkedSurface surface;
  PantsDecomposition decomposition;
  FNCoordinates fn;
  std::vector<SingularPants> pants;
  std::vector<Gluing> gluings;  // one per internal curve

  double area() const {
    double a = 0.0;
    for (const auto& p : pants) a += p.area();
    return a;
  }

  /// Internal curve on the given side, or -1 for a cone leg.
  int curve_at(CurveSide s) const {
    const LegRef& r = decomposition.pieces.at(s.piece).legs.at(s.slot);
    return r.is_curve() ? r.index : -1;
  }
  /// The side glued to `s`.
  CurveSide partner(CurveSide s) const {
    const int c = curve_at(s);
    if (c < 0) throw Error(ErrorKind::Domain, "side is a cone leg");
    const Gluing& g = gluings[c];
    return g.a == s ? g.b : g.a;
  }
  double marked_position(CurveSide s) const { return pants.at(s.piece).marked_position(s.slot); }
};

inline void validate_fn(const FNCoordinates& fn, int curves) {
  if (static_cast<int>(fn.lengths.size()) != curves || static_cast<int>(fn.twists.size()) != curves)
    throw Error(ErrorKind::Domain, "Fenchel-Nielsen data has the wrong number of curves");
  for (double l : fn.lengths)
    if (!std::isfinite(l) || l <= 0.0) throw Error(ErrorKind::Domain, "curve lengths must be positive and finite");
  for (double d : fn.twists)
    if (!std::isfinite(d)) throw Error(ErrorKind::Domain, "twists must be finite");
}

inline SurfaceGeometry build_surface(const PantsDecomposition& d, const MarkedSurface& s, const FNCoordinates& fn) {
  require_topology(d, s);
  admissible_area(s);
  validate_fn(fn, d.curve_count());

  SurfaceGeometry g;
  g.surface = s;
  g.decomposition = d;
  g.fn = fn;
  g.pants.reserve(d.pieces.size());
  std::vector<std::vector<CurveSide>> sides(d.curve_count());
  for (int pi = 0; pi < d.piece_count(); ++pi) {
    std::array<Leg, 3> legs{};
    for (int slot = 0; slot < 3; ++slot) {
      const LegRef& r = d.pieces[pi].legs[slot];
      if (r.is_curve()) {
        legs[slot] = Leg::boundary(fn.lengths[r.index]);
        sides[r.index].push_back({pi, slot});
      } else {
        legs[slot] = Leg::cone(s.cone_angles[r.index]);
      }
    }
    g.pants.push_back(build_pants(legs));
  }
  for (int c = 0; c < d.curve_count(); ++c) {
    std::sort(sides[c].begin(), sides[c].end());
    Gluing gl;
    gl.a = sides[c][0];
    gl.b = sides[c][1];
    gl.length = fn.lengths[c];
    gl.twist = fn.twists[c];
    gl.mark_a = g.pants[gl.a.piece].marked_position(gl.a.slot);
    gl.mark_b = g.pants[gl.b.piece].marked_position(gl.b.slot);
    g.gluings.push_back(gl);
  }
  return g;
}

/// Rebuilds with new Fenchel-Nielsen data on the same decomposition.
inline SurfaceGeometry with_fn(const SurfaceGeometry& g, const FNCoordinates& fn) {
  return build_surface(g.decomposition, g.surface, fn);
}

// Sample families.

/// Genus one with one cone point: one piece (g1, g1, cone 0).
inline PantsDecomposition torus_decomposition() {
  return {{"g1"}, {{"P0", {LegRef::curve(0), LegRef::curve(0), LegRef::cone(0)}}}};
}

/// Sphere with four cone points: (g1, cone 0, cone 1) and (g1, cone 2, cone 3).
inline PantsDecomposition sphere4_decomposition() {
  return {{"g1"},
          {{"P0", {LegRef::curve(0), LegRef::cone(0), LegRef::cone(1)}},
           {"P1", {LegRef::curve(0), LegRef::cone(2), LegRef::cone(3)}}}};
}

/// Closed genus two: two pants sharing three curves.
inline PantsDecomposition genus2_decomposition() {
  return {{"g1", "g2", "g3"},
          {{"P0", {LegRef::curve(0), LegRef::curve(1), LegRef::curve(2)}},
           {"P1", {LegRef::curve(0), LegRef::curve(1), LegRef::curve(2)}}}};
}

}  // namespace conesurf
