#pragma once

// Shared test utilities: seeded random fields, an independent tanh-sinh
// quadrature oracle (endpoint-singularity tolerant), and small fit helpers.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "muhs/field.hpp"

namespace testutil {

inline muhs::RealField random_band_limited(muhs::PeriodicGrid g, int kmax,
                                           std::mt19937_64& rng,
                                           double offset = 0.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::ArrayXd s = Eigen::ArrayXd::Constant(g.n, offset);
  const Eigen::ArrayXd x = g.nodes();
  for (int k = 1; k <= kmax; ++k) {
    const double decay = 1.0 / (1.0 + k * k);
    s += decay * gauss(rng) * (2.0 * std::numbers::pi * k * x).cos();
    s += decay * gauss(rng) * (2.0 * std::numbers::pi * k * x).sin();
  }
  return muhs::RealField(g, std::move(s));
}

/// Tanh-sinh (double-exponential) quadrature on (a, b) for integrands with
/// (integrable) endpoint singularities.  The integrand receives the node x
/// plus the distances to both endpoints computed in a cancellation-free way,
/// so singular factors like 1/sqrt(x - a) stay accurate deep in the tails.
/// Independent of every code path it is used to check.
inline double tanh_sinh(
    const std::function<double(double, double, double)>& f, double a,
    double b, double tol = 1e-13) {
  const double len = b - a;
  const double tmax = 4.3;  // node weights underflow beyond this
  // For |u| large, 1 - tanh|u| = 2q/(1+q) with q = exp(-2|u|).
  const auto eval = [&](double t) {
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double au = std::abs(u);
    const double q = std::exp(-2.0 * au);
    const double near_dist = len * q / (1.0 + q);
    const double far_dist = len / (1.0 + q);
    const double w =
        0.5 * len * 0.5 * std::numbers::pi * std::cosh(t) *
        (4.0 * q / ((1.0 + q) * (1.0 + q)));  // half * sech^2(u)
    double x, da, db;
    if (t >= 0.0) {
      db = near_dist;
      da = far_dist;
      x = b - db;
    } else {
      da = near_dist;
      db = far_dist;
      x = a + da;
    }
    return f(x, da, db) * w;
  };
  double h = 0.5;
  double sum = eval(0.0);
  for (double t = h; t <= tmax; t += h) sum += eval(t) + eval(-t);
  double prev = sum * h;
  double value = prev;
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= tmax; t += 2.0 * h) add += eval(t) + eval(-t);
    sum += add;
    value = sum * h;
    if (level >= 5 &&
        std::abs(value - prev) <= tol * std::max(1.0, std::abs(value))) {
      break;
    }
    prev = value;
  }
  return value;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(xs.size());
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testutil
