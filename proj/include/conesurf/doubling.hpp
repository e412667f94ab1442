#pragma once

// Bookkeeping for the doubled convex core: singular locus inventory,
// orbifold starting angles, the linear deformation path and the hypothesis
// checks on bending data.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "conesurf/hkernel.hpp"

namespace conesurf {

struct Particle {
  double angle = 0.0;
  std::optional<double> segment_length;
};

struct PleatingCurve {
  std::string curve;
  char side = '+';  // '+' upper boundary family, '-' lower
  double weight = 0.0;
};

struct BendingData {
  std::vector<Particle> particles;
  std::vector<PleatingCurve> pleating;
};

struct SingularCurve {
  enum class Kind { Particle, Pleating };
  Kind kind;
  std::string label;
  double angle = 0.0;
  std::optional<double> length;  // known for particle-type curves
  char side = 0;                 // pleating family, '+' or '-'
};

struct DoubledLocus {
  std::vector<SingularCurve> curves;
};

/// Checks that every angle and weight lies in (0, pi).
inline void require_open_ranges(const BendingData& b) {
  for (std::size_t i = 0; i < b.particles.size(); ++i) {
    const double a = b.particles[i].angle;
    if (!(a > 0.0 && a < kPi)) throw Error(ErrorKind::Domain, "particle " + std::to_string(i) + " angle outside (0, pi)");
  }
  for (const auto& p : b.pleating)
    if (!(p.weight > 0.0 && p.weight < kPi))
      throw Error(ErrorKind::Domain, "pleating curve '" + p.curve + "' weight outside (0, pi)");
}

/// Each particle becomes a closed singular curve of the same angle and twice
/// the segment length; each pleating curve becomes a singular curve of angle
/// twice its bending weight.
inline DoubledLocus double_singular_locus(const BendingData& b) {
  require_open_ranges(b);
  DoubledLocus out;
  for (std::size_t i = 0; i < b.particles.size(); ++i) {
    const auto& p = b.particles[i];
    if (!p.segment_length) throw Error(ErrorKind::Domain, "particle " + std::to_string(i) + " has no segment length");
    if (!(*p.segment_length > 0.0) || !std::isfinite(*p.segment_length))
      throw Error(ErrorKind::Domain, "particle " + std::to_string(i) + " segment length must be positive");
    out.curves.push_back({SingularCurve::Kind::Particle, "c" + std::to_string(i + 1), p.angle, 2.0 * *p.segment_length, 0});
  }
  for (const auto& p : b.pleating)
    out.curves.push_back({SingularCurve::Kind::Pleating, p.curve, 2.0 * p.weight, std::nullopt, p.side});
  return out;
}

/// Inverse of double_singular_locus.
inline BendingData halve_locus(const DoubledLocus& d) {
  BendingData b;
  for (const auto& c : d.curves) {
    if (c.kind == SingularCurve::Kind::Particle)
      b.particles.push_back({c.angle, c.length ? std::optional<double>(*c.length / 2.0) : std::nullopt});
    else
      b.pleating.push_back({c.label, c.side, c.angle / 2.0});
  }
  return b;
}

/// Smallest integer k >= 1 with pi / k <= x.
inline int orbifold_order(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorKind::Domain, "angle must be positive");
  const double q = kPi / x;
  if (q > 1e9) throw Error(ErrorKind::Domain, "angle too small for an orbifold start");
  int k = std::max(1, static_cast<int>(std::ceil(q)));
  while (k > 1 && kPi / (k - 1) <= x) --k;
  while (kPi / k > x) ++k;
  return k;
}

struct OrbifoldStart {
  std::vector<int> particle_orders;  // k_i
  std::vector<double> particle_angles;  // pi / k_i
  std::vector<int> pleating_orders;  // l_j
  std::vector<double> pleating_weights;  // pi / (2 l_j)
};

/// Maximal admissible start: theta'_i = pi/k_i <= theta_i and
/// alpha'_j = pi/(2 l_j) <= alpha_j / 2 with k_i, l_j minimal.
inline OrbifoldStart orbifold_start(const BendingData& b) {
  require_open_ranges(b);
  OrbifoldStart s;
  for (const auto& p : b.particles) {
    const int k = orbifold_order(p.angle);
    s.particle_orders.push_back(k);
    s.particle_angles.push_back(kPi / k);
  }
  for (const auto& p : b.pleating) {
    const int l = orbifold_order(p.weight);  // pi/(2l) <= alpha/2  <=>  pi/l <= alpha
    s.pleating_orders.push_back(l);
    s.pleating_weights.push_back(kPi / (2.0 * l));
  }
  return s;
}

struct PathRow {
  double t = 0.0;
  std::vector<double> weights;  // alpha_{j,t}
  std::vector<double> doubled;  // 2 alpha_{j,t}
};

struct DeformationPath {
  std::vector<PathRow> rows;
  std::vector<std::string> warnings;
};

/// alpha_{j,t} = (1-t) alpha'_j + t alpha_j on a uniform grid of `steps`
/// values of t in [0, 1]; both endpoints are reproduced exactly.
inline DeformationPath deformation_path(const std::vector<double>& start, const std::vector<double>& target, int steps) {
  if (steps < 2) throw Error(ErrorKind::Domain, "deformation path needs at least 2 steps");
  if (start.size() != target.size()) throw Error(ErrorKind::Domain, "start and target sizes differ");
  for (std::size_t j = 0; j < start.size(); ++j) {
    if (!std::isfinite(start[j]) || !std::isfinite(target[j]) || start[j] < 0.0)
      throw Error(ErrorKind::Domain, "path weights must be finite and nonnegative");
    if (start[j] > target[j])
      throw Error(ErrorKind::Domain, "start weight " + std::to_string(j) + " exceeds its target");
  }
  DeformationPath path;
  std::vector<bool> warned(start.size(), false);
  for (int i = 0; i < steps; ++i) {
    PathRow row;
    row.t = i == steps - 1 ? 1.0 : static_cast<double>(i) / (steps - 1);
    for (std::size_t j = 0; j < start.size(); ++j) {
      double a = (1.0 - row.t) * start[j] + row.t * target[j];
      if (i == 0) a = start[j];
      if (i == steps - 1) a = target[j];
      row.weights.push_back(a);
      row.doubled.push_back(2.0 * a);
      if (a >= kPi / 2.0 && !warned[j]) {
        warned[j] = true;
        path.warnings.push_back("weight " + std::to_string(j) + " reaches " + std::to_string(a) + " >= pi/2 at t = " +
                                std::to_string(row.t));
      }
    }
    path.rows.push_back(std::move(row));
  }
  return path;
}

struct Face {
  bool disk = true;
  int marked_points = 0;
};

/// Complementary regions of the union of the two pleating families.
struct FillCertificate {
  int genus = 0;
  int crossings = 0;  // V; every vertex is 4-valent so E = 2V
  std::vector<Face> faces;
};

struct BendingReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

inline BendingReport validate_bending_data(const BendingData& b, const FillCertificate& cert) {
  BendingReport r;
  auto issue = [&](std::string m) { r.issues.push_back(std::move(m)); };
  for (std::size_t i = 0; i < b.particles.size(); ++i) {
    const double a = b.particles[i].angle;
    if (!(a > 0.0 && a < kPi)) issue("particle " + std::to_string(i) + " angle " + std::to_string(a) + " not in (0, pi)");
  }
  for (const auto& p : b.pleating) {
    if (!(p.weight > 0.0 && p.weight < kPi))
      issue("pleating curve '" + p.curve + "' weight " + std::to_string(p.weight) + " not in (0, pi)");
    if (p.side != '+' && p.side != '-') issue("pleating curve '" + p.curve + "' has no side");
  }
  if (cert.genus < 0) issue("certificate genus is negative");
  if (cert.crossings < 0) issue("certificate crossing count is negative");
  const int chi = 2 - 2 * cert.genus;
  const int V = cert.crossings, E = 2 * V, F = static_cast<int>(cert.faces.size());
  if (V - E + F != chi)
    issue("Euler count V - E + F = " + std::to_string(V - E + F) + " differs from chi = " + std::to_string(chi));
  int marked = 0;
  for (std::size_t i = 0; i < cert.faces.size(); ++i) {
    const Face& f = cert.faces[i];
    if (!f.disk) issue("face " + std::to_string(i) + " is not a disk");
    if (f.marked_points < 0 || f.marked_points > 1)
      issue("face " + std::to_string(i) + " contains " + std::to_string(f.marked_points) + " marked points");
    marked += f.marked_points;
  }
  if (marked != static_cast<int>(b.particles.size()))
    issue("faces carry " + std::to_string(marked) + " marked points for " + std::to_string(b.particles.size()) +
          " particles");
  return r;
}

}  // namespace conesurf
