#pragma once

// Closed curves as words over a pants decomposition and their holonomy.
//
// A step traverses one piece from boundary slot `enter` to boundary slot
// `exit` and then crosses the internal curve at `exit`; the next step must
// enter through the glued side. enter == exit is a U-turn around the seam
// between the other two legs. The winding k of a step shifts the crossing by
// -k full turns of the crossed curve.
//
// Holonomy is the product over steps of  S_i * T(c_i) * R,  where S_i is the
// frame change across the piece, R the half turn exchanging the two sides of
// the crossed curve and c_i = m_X + m_Y + d - k l the offset between the
// glued frames.

#include <optional>
#include <utility>
#include <vector>

#include "conesurf/surface.hpp"

namespace conesurf {

struct WordStep {
  int piece = 0;
  int enter = 0;
  int exit = 0;
  long winding = 0;
  int turn = 1;  // U-turn direction; ignored when enter != exit

  friend bool operator==(const WordStep&, const WordStep&) = default;
};

struct CurveWord {
  std::vector<WordStep> steps;
  std::optional<int> peripheral;  // the word is this internal curve itself

  static CurveWord around(int curve) {
    CurveWord w;
    w.peripheral = curve;
    return w;
  }
  bool trivial() const { return !peripheral && steps.empty(); }
};

struct RationalLamination {
  std::vector<std::pair<int, double>> leaves;  // (curve, weight)

  double weight(int curve) const {
    double w = 0.0;
    for (const auto& [c, x] : leaves)
      if (c == curve) w += x;
    return w;
  }
};

inline void validate_lamination(const RationalLamination& lam, int curves) {
  std::vector<bool> seen(curves, false);
  for (const auto& [c, w] : lam.leaves) {
    if (c < 0 || c >= curves) throw Error(ErrorKind::Domain, "lamination references unknown curve " + std::to_string(c));
    if (seen[c]) throw Error(ErrorKind::Domain, "lamination lists a curve twice");
    seen[c] = true;
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorKind::Domain, "lamination weights must be nonnegative");
  }
}

inline void validate_word(const SurfaceGeometry& g, const CurveWord& w) {
  const auto& d = g.decomposition;
  if (w.peripheral) {
    if (!w.steps.empty()) throw Error(ErrorKind::Word, "peripheral word cannot also have steps");
    if (*w.peripheral < 0 || *w.peripheral >= d.curve_count()) throw Error(ErrorKind::Word, "unknown peripheral curve");
    return;
  }
  const int n = static_cast<int>(w.steps.size());
  for (int i = 0; i < n; ++i) {
    const WordStep& s = w.steps[i];
    const std::string at = "step " + std::to_string(i);
    if (s.piece < 0 || s.piece >= d.piece_count()) throw Error(ErrorKind::Word, at + ": unknown piece");
    for (int slot : {s.enter, s.exit}) {
      if (slot < 0 || slot > 2) throw Error(ErrorKind::Word, at + ": slot out of range");
      if (!d.pieces[s.piece].legs[slot].is_curve())
        throw Error(ErrorKind::Word, at + ": passes through a cone leg");
    }
    if (s.enter == s.exit && s.turn != 1 && s.turn != -1) throw Error(ErrorKind::Word, at + ": turn must be +1 or -1");
    const WordStep& next = w.steps[(i + 1) % n];
    if (next.piece < 0 || next.piece >= d.piece_count() || next.enter < 0 || next.enter > 2)
      throw Error(ErrorKind::Word, "step " + std::to_string((i + 1) % n) + ": bad entry");
    const CurveSide across = g.partner({s.piece, s.exit});
    if (!(across == CurveSide{next.piece, next.enter}))
      throw Error(ErrorKind::Word, at + ": exit is not glued to the next step's entry");
  }
}

/// Offset c of the crossing after `s` into `next`.
inline double crossing_offset(const SurfaceGeometry& g, const WordStep& s, const WordStep& next) {
  const int c = g.curve_at({s.piece, s.exit});
  const double l = g.fn.lengths[c];
  return g.marked_position({s.piece, s.exit}) + g.marked_position({next.piece, next.enter}) + g.fn.twists[c] -
         static_cast<double>(s.winding) * l;
}

inline Mat3 step_traversal(const SurfaceGeometry& g, const WordStep& s) {
  const SingularPants& p = g.pants[s.piece];
  return s.enter == s.exit ? p.u_turn(s.enter, s.turn) : p.traversal(s.enter, s.exit);
}

/// Frame change from one glued side to the other.
inline Mat3 crossing_matrix(double offset) { return translation_y(offset) * half_turn(); }

inline Isometry holonomy(const SurfaceGeometry& g, const CurveWord& w) {
  validate_word(g, w);
  if (w.peripheral) {
    const CurveSide side = g.gluings[*w.peripheral].a;
    return Isometry::unchecked_rotation(g.pants[side.piece].peripheral(side.slot));
  }
  Mat3 h = Mat3::Identity();
  const int n = static_cast<int>(w.steps.size());
  for (int i = 0; i < n; ++i) {
    const WordStep& s = w.steps[i];
    h = h * step_traversal(g, s) * crossing_matrix(crossing_offset(g, s, w.steps[(i + 1) % n]));
  }
  return Isometry::unchecked_rotation(h);
}

inline double geodesic_length(const SurfaceGeometry& g, const CurveWord& w) {
  const Isometry h = holonomy(g, w);
  const TranslationLength t = translation_length(h);
  if (t.cls != IsometryClass::Hyperbolic)
    throw Error(ErrorKind::NonGeodesic, std::string("holonomy is ") + to_string(t.cls) + ", no closed geodesic");
  return t.length;
}

/// Weighted count of transverse crossings.
inline double intersection_number(const RationalLamination& lam, const SurfaceGeometry& g, const CurveWord& w) {
  if (w.peripheral) return 0.0;
  double total = 0.0;
  for (const auto& s : w.steps) total += lam.weight(g.curve_at({s.piece, s.exit}));
  return total;
}

/// Number of times the word crosses the given curve.
inline int crossings(const SurfaceGeometry& g, const CurveWord& w, int curve) {
  if (w.peripheral) return 0;
  int n = 0;
  for (const auto& s : w.steps) n += g.curve_at({s.piece, s.exit}) == curve;
  return n;
}

inline CurveWord rotated(const CurveWord& w, int k) {
  CurveWord r = w;
  const int n = static_cast<int>(w.steps.size());
  if (n == 0) return r;
  for (int i = 0; i < n; ++i) r.steps[i] = w.steps[((i + k) % n + n) % n];
  return r;
}

/// The same curve run backwards. Each crossing keeps its winding, which now
/// sits on the step preceding it in the new order.
inline CurveWord reversed(const CurveWord& w) {
  CurveWord r = w;
  const int n = static_cast<int>(w.steps.size());
  for (int i = 0; i < n; ++i) {
    const WordStep& s = w.steps[n - 1 - i];
    WordStep t = s;
    std::swap(t.enter, t.exit);
    t.turn = -s.turn;
    t.winding = w.steps[((n - 2 - i) % n + n) % n].winding;
    r.steps[i] = t;
  }
  return r;
}

// Sample-family words.

/// Curve crossing g1 once on the genus-one family.
inline CurveWord torus_dual_word(long winding = 0) { return {{{0, 0, 1, winding, 1}}, std::nullopt}; }

/// Curve crossing g1 twice on the four-cone sphere, separating the cone
/// points pairwise.
inline CurveWord sphere4_dual_word(long k0 = 0, long k1 = 0, int t0 = 1, int t1 = 1) {
  return {{{0, 0, 0, k0, t0}, {1, 0, 0, k1, t1}}, std::nullopt};
}

}  // namespace conesurf
