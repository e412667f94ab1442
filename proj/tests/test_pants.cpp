#include <random>

#include <gtest/gtest.h>

#include "conesurf/pants.hpp"

using namespace conesurf;

namespace {

Leg B(double l) { return Leg::boundary(l); }
Leg C(double a) { return Leg::cone(a); }

std::array<Leg, 3> random_legs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.1, 5.0), ang(0.05, kPi - 0.05), coin(0.0, 1.0);
  while (true) {
    std::array<Leg, 3> legs{};
    double cone_sum = 0.0;
    int cones = 0;
    for (auto& l : legs) {
      if (coin(rng) < 0.5) {
        l = B(len(rng));
      } else {
        l = C(ang(rng));
        cone_sum += l.value;
        ++cones;
      }
    }
    if (cones < 3 || cone_sum < 2.0 * kPi - 0.05) return legs;
  }
}

template <class F>
void expect_strictly_monotone(F f, double lo, double hi, bool increasing) {
  double prev = f(lo);
  for (int i = 1; i < 100; ++i) {
    const double x = lo + (hi - lo) * i / 99.0;
    const double v = f(x);
    EXPECT_GT(increasing ? v - prev : prev - v, 1e-10) << "at " << x;
    prev = v;
  }
}

// Tolerances scale with the squared size of the factors: frames far from the
// origin carry entries of order e^d.
bool lorentz_orthonormal(const Mat3& f) {
  return (f.transpose() * form_matrix() * f - form_matrix()).norm() < 1e-12 * std::max(1.0, f.squaredNorm());
}

double product_error(const Mat3& a, const Mat3& b) {
  return (a * b - Mat3::Identity()).norm() / std::max(1.0, a.norm() * b.norm());
}

}  // namespace

TEST(Pants, RegularAllBoundary) {
  const double L = 2.0 * std::acosh(2.0);
  const SingularPants p = build_pants({B(L), B(L), B(L)});
  for (double s : p.seams) EXPECT_NEAR(s, std::acosh(2.0), 1e-9);
  for (double s : seam_lengths(p)) EXPECT_NEAR(s, 1.3169578969248166, 1e-9);
  for (const Leg& l : recomputed_leg_invariants(p)) {
    EXPECT_TRUE(l.is_boundary());
    EXPECT_NEAR(l.value, L, 1e-9);
  }
  EXPECT_NEAR(p.area(), 2.0 * kPi, 1e-12);
}

TEST(Pants, MixedSeamGolden) {
  const double L = 2.0 * std::acosh(2.0);
  const SingularPants p = build_pants({B(L), B(L), C(kPi / 2)});
  // cosh s = (cosh^2(L/2) + cos(theta/2)) / sinh^2(L/2) = (4 + cos(pi/4)) / 3
  const double oracle = std::acosh((4.0 + std::cos(kPi / 4)) / 3.0);
  EXPECT_NEAR(oracle, 1.0217725930834, 1e-12);
  EXPECT_NEAR(p.seams[2], oracle, 1e-9);
  EXPECT_NEAR(seam_lengths(p)[2], oracle, 1e-9);
}

TEST(Pants, ThreeConesEquilateral) {
  const SingularPants p = build_pants({C(kPi / 2), C(kPi / 2), C(kPi / 2)});
  for (double s : p.seams) EXPECT_NEAR(s, 1.528571, 1e-6);
  EXPECT_NEAR(p.area(), 2.0 * kPi - 3.0 * kPi / 2, 1e-9);
}

TEST(Pants, ConeAreaIsAngleDefect) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ang(0.05, 2.0);
  for (int n = 0; n < 200; ++n) {
    const double a = ang(rng), b = ang(rng), c = ang(rng);
    if (a + b + c >= 2.0 * kPi - 1e-3) continue;
    EXPECT_NEAR(build_pants({C(a), C(b), C(c)}).area(), 2.0 * kPi - a - b - c, 1e-9);
  }
}

TEST(Pants, StoredInvariantsRoundTrip) {
  const std::array<Leg, 3> legs{B(2.0), B(3.0), C(kPi / 3)};
  const SingularPants p = build_pants(legs);
  const auto inv = leg_invariants(p);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(inv[i].kind, legs[i].kind);
    EXPECT_EQ(inv[i].value, legs[i].value);
  }
}

TEST(Pants, RecomputedInvariantsRandom) {
  std::mt19937_64 rng(43);
  for (int n = 0; n < 500; ++n) {
    const auto legs = random_legs(rng);
    const SingularPants p = build_pants(legs);
    const auto rec = recomputed_leg_invariants(p);
    const Triple seams = seam_lengths(p);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(rec[i].kind, legs[i].kind);
      EXPECT_NEAR(rec[i].value, legs[i].value, 1e-9);
      EXPECT_NEAR(seams[i], p.seams[i], 1e-9);
      EXPECT_NEAR(p.seams[i], p.triangle.edge_lengths[i], 0.0);
    }
    EXPECT_GT(p.area(), 0.0);
    // Equal invariants give the same canonical development.
    const SingularPants q = build_pants(legs);
    for (int i = 0; i < 3; ++i)
      EXPECT_NEAR((p.triangle.vertices[i].vec() - q.triangle.vertices[i].vec()).norm(), 0.0, 1e-9);
    // Rebuilding from the recomputed invariants reproduces the seams.
    const SingularPants r = build_pants(rec);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.seams[i], p.seams[i], 1e-8 * std::max(1.0, p.seams[i]));
  }
}

TEST(Pants, PermutationSymmetry) {
  std::mt19937_64 rng(47);
  const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int n = 0; n < 100; ++n) {
    const auto legs = random_legs(rng);
    const SingularPants p = build_pants(legs);
    for (const auto& s : perms) {
      const SingularPants q = build_pants({legs[s[0]], legs[s[1]], legs[s[2]]});
      for (int i = 0; i < 3; ++i) EXPECT_NEAR(q.seams[i], p.seams[s[i]], 1e-9);
      EXPECT_NEAR(q.area(), p.area(), 1e-9);
    }
  }
}

TEST(Pants, SeamMonotonicity) {
  // Seam 0 joins the two cones: shrinks as either opens, grows with the
  // opposite boundary.
  expect_strictly_monotone([](double t) { return build_pants({B(1.5), C(t), C(1.0)}).seams[0]; }, 0.1, 3.0, false);
  expect_strictly_monotone([](double l) { return build_pants({B(l), C(1.2), C(1.0)}).seams[0]; }, 0.1, 6.0, true);
  // Seam 2 joins two boundaries: shrinks as the opposite cone opens... and
  // as the adjacent cone in seam 1 opens.
  expect_strictly_monotone([](double t) { return build_pants({B(2.0), B(1.0), C(t)}).seams[1]; }, 0.1, 3.0, false);
  expect_strictly_monotone([](double l) { return build_pants({B(2.0), B(1.0), B(l)}).seams[2]; }, 0.1, 6.0, true);
  expect_strictly_monotone([](double t) { return build_pants({C(t), C(0.7), C(1.1)}).seams[1]; }, 0.1, 3.0, false);
}

TEST(Pants, FramesAndHolonomyPieces) {
  std::mt19937_64 rng(53);
  for (int n = 0; n < 500; ++n) {
    const auto legs = random_legs(rng);
    const SingularPants p = build_pants(legs);
    for (int i = 0; i < 3; ++i) {
      if (!legs[i].is_boundary()) {
        EXPECT_THROW(p.leg_frame(i), Error);
        EXPECT_THROW(p.marked_position(i), Error);
        EXPECT_THROW(p.peripheral(i), Error);
        continue;
      }
      const double m = p.marked_position(i);
      EXPECT_TRUE(m == 0.0 || m == legs[i].value / 2.0);
      const Mat3 u = p.u_turn(i, 1);
      EXPECT_TRUE(lorentz_orthonormal(u));
      EXPECT_LT(product_error(u, p.u_turn(i, -1)), 1e-12);
      // The U-turn reflects across the opposite seam: its square is trivial
      // after undoing the flip.
      EXPECT_LT(product_error(u * flip_y(), u * flip_y()), 1e-12);
      for (int j = 0; j < 3; ++j)
        if (j != i && legs[j].is_boundary()) {
          EXPECT_TRUE(lorentz_orthonormal(p.traversal(i, j)));
          EXPECT_LT(product_error(p.traversal(i, j), p.traversal(j, i)), 1e-12);
        }
    }
  }
}

// The closed-form pieces agree with compositions of the developed frames and
// edge reflections where the development is well conditioned.
TEST(Pants, HolonomyPiecesMatchDevelopment) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> len(0.5, 3.0), ang(0.5, 2.5), coin(0.0, 1.0);
  int checked = 0;
  while (checked < 300) {
    std::array<Leg, 3> legs{};
    for (auto& l : legs) l = coin(rng) < 0.6 ? B(len(rng)) : C(ang(rng));
    if (!legs[0].is_boundary() && !legs[1].is_boundary() && !legs[2].is_boundary()) continue;
    const SingularPants p = build_pants(legs);
    auto inv = [](const Mat3& f) { return Mat3(form_matrix() * f.transpose() * form_matrix()); };
    auto rel = [](const Mat3& a, const Mat3& b) { return (a - b).norm() / std::max(1.0, b.norm()); };
    for (int i = 0; i < 3; ++i) {
      if (!legs[i].is_boundary()) continue;
      const Mat3& f = p.leg_frame(i);
      EXPECT_TRUE(lorentz_orthonormal(f));
      EXPECT_GT(f.determinant(), 0.0);
      EXPECT_LT(rel(p.peripheral(i), inv(f) * p.edge_reflection((i + 2) % 3) * p.edge_reflection((i + 1) % 3) * f),
                1e-9);
      EXPECT_LT(rel(p.u_turn(i, 1), inv(f) * p.edge_reflection(i) * f * flip_y()), 1e-9);
      for (int j = 0; j < 3; ++j)
        if (j != i && legs[j].is_boundary()) {
          EXPECT_LT(rel(p.traversal(i, j), inv(f) * p.leg_frame(j)), 1e-9);
        }
    }
    ++checked;
  }
}

TEST(Pants, MarkedPartner) {
  const SingularPants p = build_pants({B(2.0), C(1.0), B(3.0)});
  EXPECT_EQ(p.marked_partner(0), 2);
  EXPECT_EQ(p.marked_partner(2), 0);
  EXPECT_DOUBLE_EQ(p.marked_position(0), 0.0);
  EXPECT_DOUBLE_EQ(p.marked_position(2), 1.5);
  const SingularPants q = build_pants({C(1.0), B(2.0), C(1.5)});
  EXPECT_EQ(q.marked_partner(1), 0);
  EXPECT_DOUBLE_EQ(q.marked_position(1), 0.0);
}

TEST(Pants, Errors) {
  auto kind = [](std::array<Leg, 3> legs) {
    try {
      build_pants(legs);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Format;
  };
  EXPECT_EQ(kind({C(kPi), B(1.0), B(1.0)}), ErrorKind::Domain);
  EXPECT_EQ(kind({C(4.0), B(1.0), B(1.0)}), ErrorKind::Domain);
  EXPECT_EQ(kind({C(0.0), B(1.0), B(1.0)}), ErrorKind::Domain);
  EXPECT_EQ(kind({B(-1.0), B(1.0), B(1.0)}), ErrorKind::Domain);
  EXPECT_EQ(kind({C(2.5), C(2.5), C(2.5)}), ErrorKind::NotHyperbolic);
}
