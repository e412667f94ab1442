#pragma once

// Earthquakes along weighted pants curves and lengths in grafted metrics.
//
// Grafting inserts a flat strip of width w_i along curve i. In the universal
// cover the geodesic representative of a word alternates between hyperbolic
// segments and straight crossings of flat strips. With one pair of
// variables per weighted crossing j (exit position x_j on the near side,
// entry position y_j on the far side, both in leg-frame units) the length is
//   sum_j  acosh(-<T(y_j) o, Q_j T(x_{j+1}) o>)  +  sqrt(w_j^2 + (x_j + y_j - c_j)^2)
// where Q_j develops the word from crossing j to crossing j+1. Both terms are
// convex, so damped Newton with backtracking finds the minimum.

#include <Eigen/Dense>

#include "conesurf/curves.hpp"

namespace conesurf {

inline SurfaceGeometry earthquake(const SurfaceGeometry& g, const RationalLamination& lam) {
  validate_lamination(lam, g.decomposition.curve_count());
  SurfaceGeometry out = g;
  for (const auto& [c, w] : lam.leaves) {
    out.fn.twists[c] += w;
    out.gluings[c].twist += w;
  }
  return out;
}

struct GraftOptions {
  double stationarity_tol = 1e-10;
  int max_iterations = 10000;
};

struct GraftedPath {
  struct Segment {
    enum class Kind { Hyperbolic, Flat };
    Kind kind;
    double length;
    double width;  // strip width for flat pieces
  };
  CurveWord word;
  std::vector<double> exit_offsets;   // x_j
  std::vector<double> entry_offsets;  // y_j
  std::vector<Segment> segments;
  double length = 0.0;
  double residual = 0.0;  // max-norm of the gradient at the returned point
  int iterations = 0;
};

namespace detail {

struct GraftProblem {
  std::vector<Mat3> q;        // Q_j, J-conjugated on the left for the pairing
  std::vector<double> width;  // w_j
  std::vector<double> offset; // c_j
  int n = 0;

  static Vec3 at(double t) { return {0.0, std::sinh(t), std::cosh(t)}; }
  static Vec3 dt(double t) { return {0.0, std::cosh(t), std::sinh(t)}; }

  // Variables z = (x_0..x_{n-1}, y_0..y_{n-1}).
  double hyperbolic(int j, const Eigen::VectorXd& z) const {
    const double a = -(at(z(n + j)).transpose() * q[j] * at(z((j + 1) % n)))(0);
    return clamped_acosh(a);
  }
  double flat(int j, const Eigen::VectorXd& z) const {
    const double e = z(j) + z(n + j) - offset[j];
    return std::hypot(width[j], e);
  }
  double value(const Eigen::VectorXd& z) const {
    double f = 0.0;
    for (int j = 0; j < n; ++j) f += hyperbolic(j, z) + flat(j, z);
    return f;
  }
  void derivatives(const Eigen::VectorXd& z, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    grad.setZero(2 * n);
    hess.setZero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
      const int iy = n + j, ix = (j + 1) % n;
      const double y = z(iy), x = z(ix);
      const Vec3 ay = at(y), dy = dt(y), ax = at(x), dx = dt(x);
      const double A = -(ay.transpose() * q[j] * ax)(0);
      const double Ay = -(dy.transpose() * q[j] * ax)(0);
      const double Ax = -(ay.transpose() * q[j] * dx)(0);
      const double Axy = -(dy.transpose() * q[j] * dx)(0);
      const double r2 = std::max(A * A - 1.0, 1e-300);
      const double r = std::sqrt(r2);
      grad(iy) += Ay / r;
      grad(ix) += Ax / r;
      const double k = A / (r2 * r);
      hess(iy, iy) += A / r - Ay * Ay * k;
      hess(ix, ix) += A / r - Ax * Ax * k;
      hess(iy, ix) += Axy / r - Ay * Ax * k;
      hess(ix, iy) += Axy / r - Ay * Ax * k;

      const double e = z(j) + z(iy) - offset[j];
      const double h = std::hypot(width[j], e);
      grad(j) += e / h;
      grad(iy) += e / h;
      const double c = width[j] * width[j] / (h * h * h);
      hess(j, j) += c;
      hess(iy, iy) += c;
      hess(j, iy) += c;
      hess(iy, j) += c;
    }
  }
};

}  // namespace detail

inline GraftedPath graft_length(const SurfaceGeometry& g, const RationalLamination& lam, const CurveWord& w,
                                const GraftOptions& opt = {}) {
  validate_lamination(lam, g.decomposition.curve_count());
  GraftedPath out;
  out.word = w;
  const int steps = static_cast<int>(w.steps.size());

  std::vector<int> weighted;  // step indices whose exit crossing carries positive weight
  if (!w.peripheral)
    for (int i = 0; i < steps; ++i)
      if (lam.weight(g.curve_at({w.steps[i].piece, w.steps[i].exit})) > 0.0) weighted.push_back(i);
  if (weighted.empty()) {
    out.length = geodesic_length(g, w);
    out.segments.push_back({GraftedPath::Segment::Kind::Hyperbolic, out.length, 0.0});
    return out;
  }
  validate_word(g, w);

  detail::GraftProblem pb;
  pb.n = static_cast<int>(weighted.size());
  for (int j = 0; j < pb.n; ++j) {
    const int i = weighted[j];
    const WordStep& s = w.steps[i];
    const WordStep& next = w.steps[(i + 1) % steps];
    pb.width.push_back(lam.weight(g.curve_at({s.piece, s.exit})));
    pb.offset.push_back(crossing_offset(g, s, next));
    // Develop from the entry frame after crossing j to the exit frame of the
    // step carrying crossing j+1.
    const int stop = weighted[(j + 1) % pb.n];
    Mat3 q = Mat3::Identity();
    int k = (i + 1) % steps;
    while (true) {
      q = q * step_traversal(g, w.steps[k]);
      if (k == stop) break;
      q = q * crossing_matrix(crossing_offset(g, w.steps[k], w.steps[(k + 1) % steps]));
      k = (k + 1) % steps;
    }
    pb.q.push_back(form_matrix() * q);
  }

  const int m = 2 * pb.n;
  Eigen::VectorXd z(m);
  for (int j = 0; j < pb.n; ++j) z(j) = z(pb.n + j) = pb.offset[j] / 2.0;
  Eigen::VectorXd grad(m);
  Eigen::MatrixXd hess(m, m);
  double f = pb.value(z);
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    pb.derivatives(z, grad, hess);
    if (grad.lpNorm<Eigen::Infinity>() < opt.stationarity_tol) break;
    Eigen::VectorXd step;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() && (ldlt.vectorD().array() > 1e-14).all())
      step = -ldlt.solve(grad);
    else
      step = -grad;
    double slope = grad.dot(step);
    if (!(slope < 0.0)) {
      step = -grad;
      slope = -grad.squaredNorm();
    }
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const Eigen::VectorXd trial = z + t * step;
      const double ft = pb.value(trial);
      if (ft <= f + 1e-4 * t * slope) {
        z = trial;
        f = ft;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // no further decrease representable in double
  }
  pb.derivatives(z, grad, hess);
  out.residual = grad.lpNorm<Eigen::Infinity>();
  out.iterations = it;
  if (out.residual > 1e-7)
    throw ConvergenceError(out.residual, "grafted geodesic did not converge, residual " + std::to_string(out.residual));

  out.length = 0.0;
  for (int j = 0; j < pb.n; ++j) {
    out.exit_offsets.push_back(z(j));
    out.entry_offsets.push_back(z(pb.n + j));
    const double fl = pb.flat(j, z), hy = pb.hyperbolic(j, z);
    out.segments.push_back({GraftedPath::Segment::Kind::Flat, fl, pb.width[j]});
    out.segments.push_back({GraftedPath::Segment::Kind::Hyperbolic, hy, 0.0});
    out.length += fl + hy;
  }
  return out;
}

}  // namespace conesurf
