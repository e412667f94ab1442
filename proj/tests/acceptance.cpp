// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "conesurf/conesurf.hpp"
#include "oracles.hpp"

using namespace conesurf;

namespace {

constexpr VertexKind U = VertexKind::Usual;
constexpr VertexKind H = VertexKind::Hyperideal;

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Smallest step of a 100-point grid, signed so that positive means the
// expected direction.
template <class F>
double monotone_margin(F f, double lo, double hi, bool increasing) {
  double prev = f(lo), margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 100; ++i) {
    const double v = f(lo + (hi - lo) * i / 99.0);
    margin = std::min(margin, increasing ? v - prev : prev - v);
    prev = v;
  }
  return margin;
}

void hexagon() {
  const double a = std::acosh(2.0);
  const auto t0 = std::chrono::steady_clock::now();
  const ExtendedTriangle t = solve_from_lengths({H, H, H}, {a, a, a});
  const double ms = seconds_since(t0) * 1e3;
  double err = 0.0;
  for (double x : t.angle_data) err = std::max(err, std::abs(x - 1.3169578969248166));
  report(1, err < 1e-9 && ms < 1.0, fmt("regular hexagon arcs, max error %.2e, solve time %.3f ms", err, ms));
}

void round_trips() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mixed(0.05, kPi / 2 - 0.05), arc(0.05, 3.0), classical(0.05, 1.5);
  int rejected = 0;
  double worst = 0.0;
  for (int m = 0; m < 8; ++m) {
    const Kinds k{m & 1 ? H : U, m & 2 ? H : U, m & 4 ? H : U};
    const bool all_usual = m == 0;
    for (int n = 0; n < 1000; ++n) {
      Triple d{};
      while (true) {
        double sum = 0.0;
        for (int i = 0; i < 3; ++i) {
          d[i] = k[i] == H ? arc(rng) : (all_usual ? classical(rng) : mixed(rng));
          if (k[i] == U) sum += d[i];
        }
        if (!all_usual || sum < kPi - 0.05) break;
      }
      try {
        const Triple l = lengths_from_angles(k, d);
        const ExtendedTriangle t = solve_from_lengths(k, l);
        const Triple l2 = lengths_from_angles(k, t.angle_data);
        for (int i = 0; i < 3; ++i) worst = std::max({worst, std::abs(t.angle_data[i] - d[i]), std::abs(l2[i] - l[i])});
      } catch (const Error&) {
        ++rejected;
      }
    }
  }
  report(2, rejected == 0 && worst < 1e-9,
         fmt("8 signatures x 1000 samples, %d false rejections, worst round-trip error %.2e", rejected, worst));
}

void monotonicity() {
  const double m[] = {
      monotone_margin([](double x) { return solve_from_lengths({H, U, U}, {x, 1.0, 1.0}).angle_data[0]; }, 0.05, 5.0, true),
      monotone_margin([](double x) { return solve_from_lengths({U, H, H}, {x, 1.0, 1.0}).angle_data[0]; }, 0.05, 1.8, true),
      monotone_margin([](double x) { return solve_from_angles({U, H, H}, {x, 0.8, 1.1}).edge_lengths[0]; }, 0.05,
                      kPi / 2 - 0.05, false),
      monotone_margin([](double x) { return solve_from_angles({H, U, U}, {x, 0.7, 0.9}).edge_lengths[0]; }, 0.05, 4.0,
                      true),
  };
  const double worst = *std::min_element(std::begin(m), std::end(m));
  report(3, worst > 1e-10, fmt("4 grids of 100 points, smallest step %.2e", worst));
}

void seams() {
  const double L = 2.0 * std::acosh(2.0);
  const SingularPants reg = build_pants({Leg::boundary(L), Leg::boundary(L), Leg::boundary(L)});
  double e1 = 0.0;
  for (double s : reg.seams) e1 = std::max(e1, std::abs(s - std::acosh(2.0)));
  const SingularPants mix = build_pants({Leg::boundary(L), Leg::boundary(L), Leg::cone(kPi / 2)});
  const double oracle = std::acosh((4.0 + std::cos(kPi / 4)) / 3.0);
  const double e2 = std::abs(mix.seams[2] - oracle);
  report(4, e1 < 1e-9 && e2 < 1e-5,
         fmt("regular seams error %.2e; mixed seam %.13f vs formula %.13f (listed decimal 1.021722 is off by %.1e)", e1,
             mix.seams[2], oracle, std::abs(oracle - 1.021722)));
}

void fn_consistency() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> len(0.3, 4.0), tw(-3.0, 3.0), ang(0.2, 3.0);
  double worst = 0.0;
  for (int n = 0; n < 500; ++n) {
    PantsDecomposition d;
    MarkedSurface s;
    switch (n % 3) {
      case 0: d = genus2_decomposition(); s = {2, {}}; break;
      case 1: d = torus_decomposition(); s = {1, {ang(rng)}}; break;
      default: d = sphere4_decomposition(); s = {0, {ang(rng), ang(rng), ang(rng), ang(rng)}};
    }
    FNCoordinates fn;
    for (int c = 0; c < d.curve_count(); ++c) {
      fn.lengths.push_back(len(rng));
      fn.twists.push_back(tw(rng));
    }
    const SurfaceGeometry g = build_surface(d, s, fn);
    for (int c = 0; c < d.curve_count(); ++c)
      worst = std::max(worst, std::abs(geodesic_length(g, CurveWord::around(c)) - fn.lengths[c]));
  }
  report(5, worst < 1e-9, fmt("500 surfaces, worst pants-curve length error %.2e", worst));
}

void quake_suite() {
  SampleConfig c;
  c.samples = 10000;
  c.seed = 7;
  const auto t0 = std::chrono::steady_clock::now();
  const BoundReport r = check_quake_bounds(c);
  const double sec = seconds_since(t0);
  report(6, r.ok() && r.sample_count() == 10000 && sec < 60.0,
         fmt("%zu samples, %zu violations, min slack %.3e, %.2f s", r.sample_count(), r.violations, r.min_slack, sec));
}

void graft_suite() {
  SampleConfig c;
  c.samples = 1000;
  c.seed = 7;
  const BoundReport r = check_graft_bounds(c);
  double worst_residual = 0.0;
  for (const auto& s : r.records) worst_residual = std::max(worst_residual, s.residual);

  double worst_oracle = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double l = 0.4 + 0.18 * i, th = 0.3 + 0.13 * i, d = -2.5 + 0.26 * i;
    const SurfaceGeometry g = build_surface(torus_decomposition(), {1, {th}}, {{l}, {d}});
    const double v = graft_length(g, {{{0, 0.5}}}, torus_dual_word()).length;
    worst_oracle = std::max(worst_oracle, std::abs(v - oracle::grafted_dual_minimum(oracle::torus_seam(l, th), 0.5, d)));
  }
  report(7, r.ok() && worst_residual < 1e-7 && worst_oracle < 1e-6,
         fmt("%zu samples, %zu violations, min slack %.3e, worst residual %.2e, grid oracle error %.2e on 20 samples",
             r.sample_count(), r.violations, r.min_slack, worst_residual, worst_oracle));
}

void gauss_bonnet() {
  const double e = std::max({std::abs(admissible_area({2, {}}) - 4.0 * kPi),
                             std::abs(admissible_area({1, {kPi / 2}}) - 1.5 * kPi),
                             std::abs(admissible_area({0, {kPi / 2, kPi / 2, kPi / 2, kPi / 2}}) - 2.0 * kPi)});
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> len(0.3, 4.0), tw(-3.0, 3.0), ang(0.1, 3.0);
  double worst = 0.0;
  for (int n = 0; n < 300; ++n) {
    PantsDecomposition d;
    MarkedSurface s;
    switch (n % 3) {
      case 0: d = genus2_decomposition(); s = {2, {}}; break;
      case 1: d = torus_decomposition(); s = {1, {ang(rng)}}; break;
      default: d = sphere4_decomposition(); s = {0, {ang(rng), ang(rng), ang(rng), ang(rng)}};
    }
    FNCoordinates fn;
    for (int c = 0; c < d.curve_count(); ++c) {
      fn.lengths.push_back(len(rng));
      fn.twists.push_back(tw(rng));
    }
    worst = std::max(worst, std::abs(build_surface(d, s, fn).area() - admissible_area(s)));
  }
  report(8, e < 1e-12 && worst < 1e-8, fmt("golden areas error %.2e, piece-area sums error %.2e", e, worst));
}

void radius() {
  const double oracle = std::atanh(std::tanh(1.0) * std::cos(kPi / 4));
  const double v = safe_radius(kPi / 2, 1.0);
  const double lim = safe_radius(kPi - 1e-12, 1.0);
  const double inf = safe_radius(kPi / 2, 50.0);
  double m = std::numeric_limits<double>::infinity();
  for (double eps : {0.1, 1.0, 3.0})
    m = std::min(m, monotone_margin([eps](double t) { return safe_radius(t, eps); }, 0.01, kPi - 0.01, false));
  for (double th : {0.3, kPi / 2, 2.8})
    m = std::min(m, monotone_margin([th](double e) { return safe_radius(th, e); }, 0.01, 3.0, true));
  const bool ok = std::abs(v - oracle) < 1e-6 && lim < 1e-6 && std::abs(inf - 0.8813735870195432) < 1e-6 && m > 1e-10;
  report(9, ok,
         fmt("rho(pi/2, 1) = %.15f (identity value; listed decimal 0.602061 is off by %.1e), rho(pi-, 1) = %.1e, "
             "large-eps limit %.6f, smallest monotone step %.2e",
             v, std::abs(oracle - 0.602061), lim, inf, m));
}

void scheduler() {
  bool ok = true;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> ang(0.001, kPi - 1e-9), len(0.1, 4.0);
  BendingData b;
  for (int i = 0; i < 200; ++i) b.particles.push_back({ang(rng), len(rng)});
  for (int i = 0; i < 200; ++i) b.pleating.push_back({"g" + std::to_string(i), i % 2 ? '+' : '-', ang(rng)});
  const OrbifoldStart s = orbifold_start(b);
  for (std::size_t i = 0; i < b.particles.size(); ++i) {
    const int k = s.particle_orders[i];
    ok &= s.particle_angles[i] <= b.particles[i].angle && (k == 1 || kPi / (k - 1) > b.particles[i].angle);
  }
  for (std::size_t j = 0; j < b.pleating.size(); ++j) {
    const int l = s.pleating_orders[j];
    ok &= s.pleating_weights[j] <= b.pleating[j].weight / 2.0 && (l == 1 || kPi / (2.0 * (l - 1)) > b.pleating[j].weight / 2.0);
  }
  std::vector<double> target;
  for (const auto& p : b.pleating) target.push_back(p.weight);
  const DeformationPath path = deformation_path(s.pleating_weights, target, 17);
  ok &= path.rows.front().weights == s.pleating_weights && path.rows.back().weights == target;

  const BendingData h = halve_locus(double_singular_locus(b));
  for (std::size_t i = 0; i < b.particles.size(); ++i)
    ok &= h.particles[i].angle == b.particles[i].angle && *h.particles[i].segment_length == *b.particles[i].segment_length;
  for (std::size_t j = 0; j < b.pleating.size(); ++j) ok &= h.pleating[j].weight == b.pleating[j].weight;

  const BendingData pair{{}, {{"a", '+', 1.0}, {"b", '-', 2.0}}};
  const bool accept = validate_bending_data(pair, {2, 4, {{true, 0}, {true, 0}}}).ok();
  const bool nonfilling = !validate_bending_data({{}, {{"a", '+', 1.0}, {"a", '-', 1.0}}}, {2, 0, {{false, 0}, {false, 0}}}).ok();
  const bool pi_weight = !validate_bending_data({{}, {{"a", '+', kPi}, {"b", '-', 2.0}}}, {2, 4, {{true, 0}, {true, 0}}}).ok();
  ok &= accept && nonfilling && pi_weight;
  report(10, ok,
         fmt("maximality, path endpoints and locus round trip on 400 inputs; certificate accepted %s, non-filling rejected %s, "
             "weight pi rejected %s",
             accept ? "yes" : "no", nonfilling ? "yes" : "no", pi_weight ? "yes" : "no"));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  const std::string dir = ST_WORKDIR;
  const std::string a = dir + "/determinism_a.json", b = dir + "/determinism_b.json";
  std::remove(a.c_str());
  std::remove(b.c_str());
  const std::string base = std::string("\"") + ST_BINARY + "\" check quake --samples 10000 --seed 7 --out ";
  const int ra = std::system((base + "\"" + a + "\" 2>/dev/null").c_str());
  const int rb = std::system((base + "\"" + b + "\" 2>/dev/null").c_str());
  const std::string x = slurp(a), y = slurp(b);
  report(11, ra == 0 && rb == 0 && !x.empty() && x == y,
         fmt("two runs of st check quake --samples 10000 --seed 7: exit %d/%d, %zu bytes, identical %s", ra, rb, x.size(),
             x == y ? "yes" : "no"));
}

}  // namespace

int main() {
  const std::pair<int, void (*)()> criteria[] = {{1, hexagon},       {2, round_trips},   {3, monotonicity}, {4, seams},
                                                 {5, fn_consistency}, {6, quake_suite},  {7, graft_suite},  {8, gauss_bonnet},
                                                 {9, radius},         {10, scheduler},   {11, determinism}};
  for (const auto& [n, fn] : criteria) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(n, false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
