#pragma once

// Randomized verification of the length inequalities, plus closed-form
// diagnostics. Reports are reproducible from (seed, config): every sample
// draws from its own generator seeded by (seed, index), and results are
// stored by index regardless of thread scheduling.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "conesurf/deform.hpp"

namespace conesurf {

enum class Family { Torus, Sphere4, Mixed };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Torus: return "torus";
    case Family::Sphere4: return "sphere4";
    case Family::Mixed: return "mixed";
  }
  return "unknown";
}

struct SampleConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  Family family = Family::Mixed;
  double length_min = 0.3;
  double length_max = 4.0;
  double twist_max = 3.0;
  double weight_max = 3.0;
  double angle_min = 0.2;
  double angle_max = 3.0;
  int winding_max = 2;
  double peripheral_fraction = 0.15;
};

inline void validate_config(const SampleConfig& c) {
  auto bad = [](const char* m) { throw Error(ErrorKind::Domain, m); };
  if (!(c.length_min > 0.0 && c.length_max >= c.length_min)) bad("length range must satisfy 0 < min <= max");
  if (!(c.twist_max >= 0.0)) bad("twist range must be nonnegative");
  if (!(c.weight_max > 0.0)) bad("weight range must be positive");
  if (!(c.angle_min > 0.0 && c.angle_max >= c.angle_min && c.angle_max < kPi)) bad("cone angle range must lie in (0, pi)");
  if (c.winding_max < 0) bad("winding range must be nonnegative");
  if (!(c.peripheral_fraction >= 0.0 && c.peripheral_fraction <= 1.0)) bad("peripheral fraction must lie in [0, 1]");
}

/// Platform-independent uniform draws on top of mt19937_64.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    eng_.seed(seq);
  }
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  long integer(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

inline unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

/// Calls fn(i) for i in [0, n) on up to thread_budget() threads.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(thread_budget(), std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct SampleRecord {
  std::size_t index = 0;
  std::string family;
  std::string word;
  std::vector<double> cone_angles;
  double length = 0.0;  // l_1
  double twist = 0.0;   // d_1
  double weight = 0.0;  // weight on g1
  double left = 0.0;
  double middle = 0.0;
  double right = 0.0;
  double slack = 0.0;
  double residual = 0.0;
  bool pass = true;
  std::string error;
};

struct BoundReport {
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<SampleRecord> records;
  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;

  std::size_t sample_count() const { return records.size(); }
  bool ok() const { return violations == 0; }
};

inline constexpr double kBoundTol = 1e-9;

namespace detail {

inline void finish(BoundReport& r) {
  for (const auto& s : r.records) {
    if (!s.pass) ++r.violations;
    if (s.error.empty()) r.min_slack = std::min(r.min_slack, s.slack);
  }
  if (r.records.empty()) r.min_slack = 0.0;
}

struct Sample {
  SurfaceGeometry geom;
  CurveWord word;
  std::string word_text;
  std::string family;
  double weight = 0.0;
};

inline std::string word_text(const CurveWord& w) {
  if (w.peripheral) return "peripheral g" + std::to_string(*w.peripheral + 1);
  std::ostringstream os;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const auto& s = w.steps[i];
    if (i) os << ' ';
    os << 'P' << s.piece << ':' << s.enter << '>' << s.exit << "/k" << s.winding;
    if (s.enter == s.exit) os << (s.turn > 0 ? "+" : "-");
  }
  return os.str();
}

inline Sample draw(const SampleConfig& c, std::uint64_t index) {
  SampleRng rng(c.seed, index);
  Family fam = c.family;
  if (fam == Family::Mixed) fam = rng.uniform() < 0.5 ? Family::Torus : Family::Sphere4;
  Sample s;
  const double l = rng.uniform(c.length_min, c.length_max);
  const double d = rng.uniform(-c.twist_max, c.twist_max);
  s.weight = rng.uniform(0.0, c.weight_max);
  const bool peripheral = rng.uniform() < c.peripheral_fraction;
  const long wm = c.winding_max;
  if (fam == Family::Torus) {
    s.family = "torus";
    MarkedSurface m{1, {rng.uniform(c.angle_min, c.angle_max)}};
    s.geom = build_surface(torus_decomposition(), m, {{l}, {d}});
    s.word = peripheral ? CurveWord::around(0) : torus_dual_word(rng.integer(-wm, wm));
  } else {
    s.family = "sphere4";
    MarkedSurface m{0, {}};
    for (int i = 0; i < 4; ++i) m.cone_angles.push_back(rng.uniform(c.angle_min, c.angle_max));
    s.geom = build_surface(sphere4_decomposition(), m, {{l}, {d}});
    if (peripheral) {
      s.word = CurveWord::around(0);
    } else {
      const long k0 = rng.integer(-wm, wm), k1 = rng.integer(-wm, wm);
      const int t0 = rng.uniform() < 0.5 ? 1 : -1, t1 = rng.uniform() < 0.5 ? 1 : -1;
      s.word = sphere4_dual_word(k0, k1, t0, t1);
    }
  }
  s.word_text = word_text(s.word);
  return s;
}

inline SampleRecord base_record(std::size_t index, const Sample& s) {
  SampleRecord r;
  r.index = index;
  r.family = s.family;
  r.word = s.word_text;
  r.cone_angles = s.geom.surface.cone_angles;
  r.length = s.geom.fn.lengths[0];
  r.twist = s.geom.fn.twists[0];
  r.weight = s.weight;
  return r;
}

template <class Fn>
BoundReport run_suite(const char* kind, const SampleConfig& c, Fn evaluate) {
  validate_config(c);
  BoundReport rep;
  rep.kind = kind;
  rep.seed = c.seed;
  rep.records.resize(c.samples);
  parallel_for(c.samples, [&](std::size_t i) {
    SampleRecord rec;
    rec.index = i;
    try {
      const Sample s = draw(c, i);
      rec = base_record(i, s);
      evaluate(s, rec);
    } catch (const std::exception& e) {
      rec.pass = false;
      rec.error = e.what();
    }
    rep.records[i] = std::move(rec);
  });
  finish(rep);
  return rep;
}

}  // namespace detail

/// |L_g - L_g'| <= i(nu, gamma) <= L_g + L_g' for g' the earthquake of g
/// along nu (weight on g1).
inline BoundReport check_quake_bounds(const SampleConfig& c) {
  return detail::run_suite("quake", c, [](const detail::Sample& s, SampleRecord& r) {
    const RationalLamination nu{{{0, s.weight}}};
    const double l0 = geodesic_length(s.geom, s.word);
    const double l1 = geodesic_length(earthquake(s.geom, nu), s.word);
    r.left = std::abs(l0 - l1);
    r.middle = intersection_number(nu, s.geom, s.word);
    r.right = l0 + l1;
    r.slack = std::min(r.middle - r.left, r.right - r.middle);
    r.pass = r.slack >= -kBoundTol;
  });
}

/// L_m <= L_G <= L_m + i(lambda, gamma) for grafting along lambda.
inline BoundReport check_graft_bounds(const SampleConfig& c) {
  return detail::run_suite("graft", c, [](const detail::Sample& s, SampleRecord& r) {
    const RationalLamination lam{{{0, s.weight}}};
    const double l = geodesic_length(s.geom, s.word);
    const GraftedPath gp = graft_length(s.geom, lam, s.word);
    r.left = l;
    r.middle = gp.length;
    r.right = l + intersection_number(lam, s.geom, s.word);
    r.residual = gp.residual;
    r.slack = std::min(r.middle - r.left, r.right - r.middle);
    r.pass = r.slack >= -kBoundTol && gp.residual < 1e-7;
  });
}

/// Random usual triangles: area below every edge length.
inline BoundReport check_area_bound(std::size_t samples, std::uint64_t seed, double radius = 5.0) {
  BoundReport rep;
  rep.kind = "area";
  rep.seed = seed;
  rep.records.resize(samples);
  parallel_for(samples, [&](std::size_t i) {
    SampleRng rng(seed, i);
    SampleRecord r;
    r.index = i;
    r.family = "triangle";
    std::array<Point, 3> p{Point::origin(), Point::origin(), Point::origin()};
    for (auto& q : p) {
      const double rr = rng.uniform(0.0, radius), phi = rng.uniform(0.0, 2.0 * kPi);
      q = Point::normalized({std::sinh(rr) * std::cos(phi), std::sinh(rr) * std::sin(phi), std::cosh(rr)});
    }
    std::array<double, 3> ang{}, edge{};
    for (int k = 0; k < 3; ++k) {
      const Vec3 a = p[k].vec().vec(), b = p[(k + 1) % 3].vec().vec(), c = p[(k + 2) % 3].vec().vec();
      const Vec3 tb = b + inner(a, b) * a, tc = c + inner(a, c) * a;
      const double nb = inner(tb, tb), nc = inner(tc, tc);
      ang[k] = (nb > 0.0 && nc > 0.0) ? clamped_acos(inner(tb, tc) / std::sqrt(nb * nc)) : 0.0;
      edge[k] = dist_point_point(p[(k + 1) % 3], p[(k + 2) % 3]);
    }
    const double sum = ang[0] + ang[1] + ang[2];
    r.left = std::max(0.0, kPi - sum);
    r.middle = r.left;
    r.right = *std::min_element(edge.begin(), edge.end());
    r.slack = r.right - r.left;
    // Nearly collinear triples give area and shortest edge both tending to 0.
    r.pass = r.slack > 0.0 || (r.left < 1e-12 && r.right < 1e-12);
    rep.records[i] = r;
  });
  detail::finish(rep);
  return rep;
}

inline double safe_radius(double theta, double eps) {
  if (!(theta > 0.0 && theta < kPi)) throw Error(ErrorKind::Domain, "cone angle outside (0, pi)");
  if (!(eps > 0.0) || std::isnan(eps)) throw Error(ErrorKind::Domain, "radius must be positive");
  return std::atanh(std::tanh(eps) * std::cos(theta / 2.0));
}

struct FNComparison {
  double length_ratio = 1.0;
  double twist_gap = 0.0;
};

/// Largest length ratio and largest twist difference normalized by
/// |log l_i| + 1 (l_i taken from the first coordinates).
inline FNComparison fn_comparison(const FNCoordinates& a, const FNCoordinates& b) {
  if (a.lengths.size() != b.lengths.size() || a.twists.size() != b.twists.size() || a.lengths.size() != a.twists.size())
    throw Error(ErrorKind::Domain, "coordinates refer to different curve sets");
  validate_fn(a, static_cast<int>(a.lengths.size()));
  validate_fn(b, static_cast<int>(b.lengths.size()));
  FNComparison r;
  for (std::size_t i = 0; i < a.lengths.size(); ++i) {
    r.length_ratio = std::max({r.length_ratio, a.lengths[i] / b.lengths[i], b.lengths[i] / a.lengths[i]});
    r.twist_gap = std::max(r.twist_gap, std::abs(a.twists[i] - b.twists[i]) / (std::abs(std::log(a.lengths[i])) + 1.0));
  }
  return r;
}

/// Exploratory: for random metric pairs related by an earthquake, records
/// the FN distortion (left = length ratio, middle = twist gap) and the
/// lamination length l_1 * w (right). No pass/fail threshold is applied.
inline BoundReport probe_max_length(const SampleConfig& c) {
  return detail::run_suite("max-length", c, [](const detail::Sample& s, SampleRecord& r) {
    const RationalLamination nu{{{0, s.weight}}};
    const FNComparison fc = fn_comparison(s.geom.fn, earthquake(s.geom, nu).fn);
    r.left = fc.length_ratio;
    r.middle = fc.twist_gap;
    r.right = s.geom.fn.lengths[0] * s.weight;
    r.slack = 0.0;
    r.pass = true;
  });
}

}  // namespace conesurf
