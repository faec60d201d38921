#include "muhs/waves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "muhs/elliptic.hpp"
#include "muhs/evolution.hpp"
#include "muhs/spectral.hpp"

namespace muhs {

namespace {

constexpr double kPi = std::numbers::pi;

WaveFamily mirror_family(WaveFamily f) {
  switch (f) {
    case WaveFamily::Cusped: return WaveFamily::Anticusped;
    case WaveFamily::Anticusped: return WaveFamily::Cusped;
    case WaveFamily::SolitaryAnticusped: return WaveFamily::SolitaryCusped;
    case WaveFamily::SolitaryCusped: return WaveFamily::SolitaryAnticusped;
    default: return f;
  }
}

// Canonical mu > 0 bounded wave with the trough at theta = 0, evaluated
// through the angle substitution of the quadrature integral.
struct Shape {
  WaveFamily family = WaveFamily::Unbounded;
  double c = 0, m = 0, M = 0, mu = 1;
  double r = 0;          // elliptic parameter (q for the anticusped branch)
  double scale = 0;      // x-scale in front of the elliptic integrals
  double theta_max = 0;
  double half_period = 0;
  double period = 0;
  double mean_integral = 0;

  double phi(double th) const {
    const double s2 = std::sin(th) * std::sin(th);
    return family == WaveFamily::Anticusped ? c + (m - c) * s2
                                            : m + (M - m) * s2;
  }
  double x(double th) const {
    if (family == WaveFamily::Anticusped) {
      return scale * (ellint_F(th, r) - ellint_E_inc(th, r));
    }
    return scale * ellint_E_inc(th, r);
  }
  double dxdth(double th) const {
    const double s2 = std::sin(th) * std::sin(th);
    if (family == WaveFamily::Anticusped) {
      return scale * r * s2 / std::sqrt(1.0 - r * s2);
    }
    return scale * std::sqrt(std::max(0.0, 1.0 - r * s2));
  }
  double phi_x_sq(double th) const {
    const double p = phi(th);
    return 2.0 * mu * (M - p) * (p - m) / (c - p);
  }
};

Shape make_shape(double c, double m, double M, double mu) {
  Shape sh;
  sh.family = classify_params(c, m, M, mu);
  sh.c = c;
  sh.m = m;
  sh.M = M;
  sh.mu = mu;
  switch (sh.family) {
    case WaveFamily::Smooth: {
      sh.r = (M - m) / (c - m);
      sh.scale = std::sqrt(2.0 * (c - m) / mu);
      sh.theta_max = kPi / 2;
      const double E = ellint_E(sh.r), K = ellint_K(sh.r);
      sh.half_period = sh.scale * E;
      sh.mean_integral =
          2.0 / 3.0 * sh.scale * ((2.0 * (m + M) - c) * E + (c - M) * K);
      break;
    }
    case WaveFamily::Cusped: {
      sh.r = (M - m) / (c - m);
      sh.scale = std::sqrt(2.0 * (c - m) / mu);
      sh.theta_max = std::asin(std::sqrt((c - m) / (M - m)));
      // Turning-point values with exact sin^2/cos^2 arguments.
      const double s2 = (c - m) / (M - m);
      const double c2 = (M - c) / (M - m);
      const double E = ellint_E_turning(s2, c2, sh.r);
      const double F = ellint_F_turning(s2, c2);
      sh.half_period = sh.scale * E;
      sh.mean_integral =
          2.0 / 3.0 * sh.scale * ((2.0 * (m + M) - c) * E + (c - M) * F);
      break;
    }
    case WaveFamily::Anticusped: {
      sh.r = (m - c) / (M - c);
      sh.scale = std::sqrt(2.0 * (M - c) / mu);
      sh.theta_max = kPi / 2;
      const double E = ellint_E(sh.r), K = ellint_K(sh.r);
      sh.half_period = sh.scale * (K - E);
      sh.mean_integral =
          2.0 / 3.0 * sh.scale * ((2.0 * M + m) * K - (2.0 * (m + M) - c) * E);
      break;
    }
    default: {
      std::ostringstream os;
      os << "wave parameters (c=" << c << ", m=" << m << ", M=" << M
         << ", mu=" << mu << ") do not select a bounded periodic family";
      throw InvalidParams(os.str());
    }
  }
  sh.period = 2.0 * sh.half_period;
  return sh;
}

// Fritsch-Carlson monotone piecewise-cubic through strictly increasing
// knots; evaluation clamps to the knot range.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    }
    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      slope_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        slope_[i] = slope_[i + 1] = 0.0;
        continue;
      }
      const double a = slope_[i] / d[i];
      const double b = slope_[i + 1] / d[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        slope_[i] = tau * a * d[i];
        slope_[i + 1] = tau * b * d[i];
      }
    }
  }

  double operator()(double t) const {
    if (t <= x_.front()) return y_.front();
    if (t >= x_.back()) return y_.back();
    std::size_t lo =
        std::upper_bound(x_.begin(), x_.end(), t) - x_.begin() - 1;
    const double h = x_[lo + 1] - x_[lo];
    const double s = (t - x_[lo]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * y_[lo] + h10 * h * slope_[lo] + h01 * y_[lo + 1] +
           h11 * h * slope_[lo + 1];
  }

 private:
  std::vector<double> x_, y_, slope_;
};

// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the recurrence).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

// Quadrature nodes (theta, weight) covering [0, theta_max]; the cusped
// branch substitutes theta = theta_max - t^2 to remove the inverse-sqrt
// endpoint factor.
void shape_quadrature(const Shape& sh, int order, std::vector<double>& th,
                      std::vector<double>& wt) {
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  th.resize(order);
  wt.resize(order);
  if (sh.family == WaveFamily::Cusped) {
    const double tmax = std::sqrt(sh.theta_max);
    for (int i = 0; i < order; ++i) {
      const double t = 0.5 * tmax * (gx[i] + 1.0);
      th[i] = sh.theta_max - t * t;
      wt[i] = gw[i] * 0.5 * tmax * 2.0 * t;
    }
  } else {
    for (int i = 0; i < order; ++i) {
      th[i] = 0.5 * sh.theta_max * (gx[i] + 1.0);
      wt[i] = gw[i] * 0.5 * sh.theta_max;
    }
  }
}

}  // namespace

const char* to_string(WaveFamily family) {
  switch (family) {
    case WaveFamily::Smooth: return "Smooth";
    case WaveFamily::Cusped: return "Cusped";
    case WaveFamily::Anticusped: return "Anticusped";
    case WaveFamily::SolitaryAnticusped: return "SolitaryAnticusped";
    case WaveFamily::SolitaryCusped: return "SolitaryCusped";
    case WaveFamily::Unbounded: return "Unbounded";
  }
  return "?";
}

WaveFamily classify_params(double c, double m_lo, double M_hi, double mu) {
  if (mu == 0.0) throw InvalidParams("classify_params: mu must be nonzero");
  if (m_lo > M_hi) throw InvalidParams("classify_params: need m <= M");
  if (mu < 0.0) {
    return mirror_family(classify_params(-c, -M_hi, -m_lo, -mu));
  }
  if (m_lo == M_hi) {
    return c < m_lo ? WaveFamily::SolitaryAnticusped : WaveFamily::Unbounded;
  }
  if (M_hi < c) return WaveFamily::Smooth;
  if (m_lo < c && c < M_hi) return WaveFamily::Cusped;
  if (c < m_lo) return WaveFamily::Anticusped;
  return WaveFamily::Unbounded;
}

WaveParams WaveParams::make(double c, double m_lo, double M_hi, double mu) {
  WaveParams p;
  p.c = c;
  p.m_lo = m_lo;
  p.M_hi = M_hi;
  p.mu = mu;
  p.family = classify_params(c, m_lo, M_hi, mu);
  p.a_coef = 2.0 * mu * (m_lo + M_hi);
  p.b_coef = -2.0 * mu * m_lo * M_hi;
  return p;
}

WaveStats wave_stats(double c, double m_lo, double M_hi, double mu) {
  if (mu < 0.0) {
    const WaveStats s = wave_stats(-c, -M_hi, -m_lo, -mu);
    return {s.period, -s.mean_integral};
  }
  const Shape sh = make_shape(c, m_lo, M_hi, mu);
  return {sh.period, sh.mean_integral};
}

double mu_constraint(double c, double m_lo, double M_hi) {
  const double i1 = wave_stats(c, m_lo, M_hi, 1.0).mean_integral;
  if (!(i1 > 0.0)) {
    std::ostringstream os;
    os << "mu_constraint: mean-integral at mu = 1 is " << i1
       << " <= 0; no wave satisfies the mean constraint for (c=" << c
       << ", m=" << m_lo << ", M=" << M_hi << ")";
    throw NonPositiveMean(os.str());
  }
  return std::pow(i1, 2.0 / 3.0);
}

double muhs_period(double c, double m_lo, double M_hi) {
  const WaveFamily fam = classify_params(c, m_lo, M_hi, 1.0);
  if (fam == WaveFamily::Smooth || fam == WaveFamily::Cusped) {
    const double r = (M_hi - m_lo) / (c - m_lo);
    double E, KF;
    if (fam == WaveFamily::Smooth) {
      E = ellint_E(r);
      KF = ellint_K(r);
    } else {
      const double s2 = (c - m_lo) / (M_hi - m_lo);
      const double c2 = (M_hi - c) / (M_hi - m_lo);
      E = ellint_E_turning(s2, c2, r);
      KF = ellint_F_turning(s2, c2);
    }
    const double sq = std::sqrt(c - m_lo);
    const double G = (2.0 * (m_lo + M_hi) - c) * E + (c - M_hi) * KF;
    if (!(G > 0.0)) {
      throw NonPositiveMean("muhs_period: mean-integral is nonpositive");
    }
    return 2.0 * std::cbrt(3.0) * sq * E / std::cbrt(sq * G);
  }
  // Remaining bounded family: compose the constraint with the stats.
  const double mu = mu_constraint(c, m_lo, M_hi);
  return wave_stats(c, m_lo, M_hi, mu).period;
}

WaveParams solve_period_one(double c, WaveFamily family, double m_anchor) {
  if (c <= 0.0) {
    throw InvalidParams(
        "solve_period_one: c must be positive (negative speeds are mirror "
        "images under the sign symmetry)");
  }
  if (family != WaveFamily::Smooth && family != WaveFamily::Cusped) {
    throw InvalidParams("solve_period_one: family must be Smooth or Cusped");
  }
  if (!(m_anchor > 0.0 && m_anchor < c)) {
    throw InvalidParams("solve_period_one: need 0 < m_anchor < c");
  }

  const auto f = [&](double M) { return muhs_period(c, m_anchor, M) - 1.0; };

  // 64 geometric probes of the search interval.
  constexpr int kProbes = 64;
  std::vector<double> Ms(kProbes);
  if (family == WaveFamily::Smooth) {
    // M = c - (c - m) * g with g geometric in (1e-8, 1 - 1e-9).
    const double g0 = 1.0 - 1e-9, g1 = 1e-8;
    for (int i = 0; i < kProbes; ++i) {
      const double g =
          g0 * std::pow(g1 / g0, static_cast<double>(i) / (kProbes - 1));
      Ms[i] = c - (c - m_anchor) * g;
    }
  } else {
    // M = c + (c - m) * g with g geometric in (1e-8, 1e4).
    for (int i = 0; i < kProbes; ++i) {
      const double g =
          1e-8 * std::pow(1e12, static_cast<double>(i) / (kProbes - 1));
      Ms[i] = c + (c - m_anchor) * g;
    }
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double Ma = 0, Mb = 0, fa = 0;
  bool bracketed = false;
  double fprev = f(Ms[0]);
  lo = std::min(lo, fprev + 1.0);
  hi = std::max(hi, fprev + 1.0);
  for (int i = 1; i < kProbes && !bracketed; ++i) {
    const double fi = f(Ms[i]);
    lo = std::min(lo, fi + 1.0);
    hi = std::max(hi, fi + 1.0);
    if (fprev == 0.0 || fprev * fi < 0.0) {
      Ma = Ms[i - 1];
      Mb = Ms[i];
      fa = fprev;
      bracketed = true;
    }
    fprev = fi;
  }
  if (!bracketed) {
    std::ostringstream os;
    os << "solve_period_one: period map over M in [" << Ms.front() << ", "
       << Ms.back() << "] has range [" << lo << ", " << hi
       << "] and does not cross 1 (c=" << c << ", " << to_string(family)
       << ", m_anchor=" << m_anchor << ")";
    throw NoBracket(os.str());
  }

  double fm = fa;
  double Mmid = Ma;
  for (int it = 0; it < 200 && std::abs(fm) >= 1e-10; ++it) {
    Mmid = 0.5 * (Ma + Mb);
    fm = f(Mmid);
    if ((fa < 0.0) == (fm < 0.0)) {
      Ma = Mmid;
      fa = fm;
    } else {
      Mb = Mmid;
    }
  }
  if (std::abs(fm) >= 1e-10) {
    throw NoBracket("solve_period_one: bisection failed to reach 1e-10");
  }
  return WaveParams::make(c, m_anchor, Mmid,
                          mu_constraint(c, m_anchor, Mmid));
}

WaveProfile profile(const WaveParams& params, int nsamples) {
  if (nsamples < 8 || nsamples % 2 != 0) {
    throw InvalidInput("profile: nsamples must be even and >= 8");
  }
  if (params.family == WaveFamily::SolitaryAnticusped ||
      params.family == WaveFamily::SolitaryCusped) {
    throw InvalidParams("profile: use solitary_profile for line solutions");
  }
  const bool mirrored = params.mu < 0.0;
  const Shape sh = mirrored
                       ? make_shape(-params.c, -params.M_hi, -params.m_lo,
                                    -params.mu)
                       : make_shape(params.c, params.m_lo, params.M_hi,
                                    params.mu);

  const int ntheta = std::max(4097, 4 * nsamples + 1);
  std::vector<double> xd, pd;
  xd.reserve(ntheta);
  pd.reserve(ntheta);
  for (int i = 0; i < ntheta; ++i) {
    const double th = sh.theta_max * i / (ntheta - 1);
    const double x = sh.x(th);
    if (!xd.empty() && !(x > xd.back())) continue;  // drop stalled knots
    xd.push_back(x);
    pd.push_back(sh.phi(th));
  }
  // Pin the endpoints to the closed-form extrema.
  xd.back() = sh.half_period;
  pd.back() = sh.phi(sh.theta_max);
  const MonotoneCubic interp(std::move(xd), std::move(pd));

  WaveProfile out;
  out.params = params;
  out.period = sh.period;
  out.xs = Eigen::ArrayXd::LinSpaced(nsamples, 0.0,
                                     sh.period * (nsamples - 1.0) / nsamples);
  out.phis.resize(nsamples);
  for (int j = 0; j < nsamples; ++j) {
    const double x = std::min(out.xs[j], sh.period - out.xs[j]);
    out.phis[j] = interp(x);
  }
  if (mirrored) out.phis = -out.phis;
  out.mean = out.phis.mean();
  if (sh.family == WaveFamily::Cusped) {
    out.cusp_xs = {sh.half_period};
  } else if (sh.family == WaveFamily::Anticusped) {
    out.cusp_xs = {0.0};
  }
  return out;
}

WaveProfile solitary_profile(double c, double mu, int nsamples) {
  if (nsamples < 8 || nsamples % 2 != 0) {
    throw InvalidInput("solitary_profile: nsamples must be even and >= 8");
  }
  if (mu == 0.0 || c == 0.0 || (mu > 0.0) == (c > 0.0)) {
    throw InvalidParams(
        "solitary_profile: requires sign(c) opposite to sign(mu)");
  }
  const bool mirrored = mu > 0.0;  // anticusped case is the mirror image
  const double cc = mirrored ? -c : c;
  const double mm = mirrored ? -mu : mu;

  // phi = cc sech^2(xi), x = sqrt(2 cc / -mm) (xi - tanh xi); window down to
  // phi = 1e-10 cc.
  const double S = std::sqrt(2.0 * cc / -mm);
  const double xi_max = std::acosh(1e5);
  const double x_max = S * (xi_max - std::tanh(xi_max));

  const int nxi = std::max(4097, 4 * nsamples + 1);
  std::vector<double> xd, pd;
  xd.reserve(nxi);
  pd.reserve(nxi);
  for (int i = 0; i < nxi; ++i) {
    const double xi = xi_max * i / (nxi - 1);
    const double sech = 1.0 / std::cosh(xi);
    const double x = S * (xi - std::tanh(xi));
    if (!xd.empty() && !(x > xd.back())) continue;
    xd.push_back(x);
    pd.push_back(cc * sech * sech);
  }
  const MonotoneCubic interp(std::move(xd), std::move(pd));

  WaveProfile out;
  out.params.c = c;
  out.params.mu = mu;
  out.params.family =
      mirrored ? WaveFamily::SolitaryAnticusped : WaveFamily::SolitaryCusped;
  out.period = 2.0 * x_max;  // window width; the wave itself is not periodic
  // nsamples + 1 points so the crest at x = 0 is hit exactly.
  out.xs = Eigen::ArrayXd::LinSpaced(nsamples + 1, -x_max, x_max);
  out.phis.resize(nsamples + 1);
  for (int j = 0; j <= nsamples; ++j) out.phis[j] = interp(std::abs(out.xs[j]));
  if (mirrored) out.phis = -out.phis;
  out.mean = out.phis.mean();
  out.cusp_xs = {0.0};
  return out;
}

double weak_residual(const WaveProfile& prof, int test_modes) {
  if (test_modes < 1) throw InvalidInput("weak_residual: test_modes >= 1");
  const WaveParams& p = prof.params;
  if (p.family == WaveFamily::SolitaryAnticusped ||
      p.family == WaveFamily::SolitaryCusped ||
      p.family == WaveFamily::Unbounded) {
    throw InvalidParams("weak_residual: bounded periodic profiles only");
  }
  // The weak form is invariant under the sign symmetry, so evaluate the
  // mu > 0 representative.
  const Shape sh = p.mu < 0.0
                       ? make_shape(-p.c, -p.M_hi, -p.m_lo, -p.mu)
                       : make_shape(p.c, p.m_lo, p.M_hi, p.mu);
  const double a = 2.0 * sh.mu * (sh.m + sh.M);
  const double P = sh.period;

  std::vector<double> th, wt;
  shape_quadrature(sh, 240, th, wt);
  const int nq = static_cast<int>(th.size());
  std::vector<double> xv(nq), phv(nq), dxv(nq), px2(nq);
  for (int i = 0; i < nq; ++i) {
    xv[i] = sh.x(th[i]);
    phv[i] = sh.phi(th[i]);
    dxv[i] = sh.dxdth(th[i]);
    px2[i] = sh.phi_x_sq(th[i]);
  }

  double worst = 0.0;
  for (int k = 0; k <= test_modes; ++k) {
    const double om = 2.0 * kPi * k / P;
    for (int trig = 0; trig < (k == 0 ? 1 : 2); ++trig) {
      double i1 = 0.0, i2 = 0.0;
      for (int i = 0; i < nq; ++i) {
        const auto psi = [&](double x) {
          return trig == 0 ? std::cos(om * x) : std::sin(om * x);
        };
        const double pair = psi(xv[i]) + psi(P - xv[i]);
        const double w = wt[i] * dxv[i];
        i1 += w * (px2[i] + 4.0 * sh.mu * phv[i] - a) * pair;
        i2 += w * (phv[i] - sh.c) * (phv[i] - sh.c) * (-om * om) * pair;
      }
      worst = std::max(worst, std::abs(i1 - i2));
    }
  }
  return worst;
}

ShapeError shape_preservation_error(const WaveParams& params, int grid_n,
                                    double t_end) {
  if (params.family != WaveFamily::Smooth) {
    throw InvalidParams("shape_preservation_error: smooth waves only");
  }
  const WaveProfile prof = profile(params, grid_n);
  if (std::abs(prof.period - 1.0) > 1e-8) {
    throw InvalidParams(
        "shape_preservation_error: wave period must be 1 (use "
        "solve_period_one output)");
  }
  const PeriodicGrid g(grid_n);
  const RealField u0(g, prof.phis);

  EvolutionConfig cfg;
  cfg.n = grid_n;
  cfg.t_end = t_end;
  const Trajectory traj = integrate(u0, cfg);
  if (traj.verdict.tag != TrajectoryVerdict::Tag::Completed) {
    throw NumericalFailure(
        "shape_preservation_error: evolution did not complete");
  }
  const RealField& uT = traj.states.back();

  // Shift-minimized distance through the cross-correlation
  //   C(s) = Re sum_k uT_hat conj(u0_hat) e^{2 pi i k s}.
  const Eigen::ArrayXcd& a = uT.spectrum();
  const Eigen::ArrayXcd& b = traj.states.front().spectrum();
  const Eigen::ArrayXcd prod = a * b.conjugate();
  const int n = grid_n;
  const auto corr = [&](double s) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const int k = detail::wavenumber(i, n);
      acc += (prod[i] * std::polar(1.0, 2.0 * kPi * k * s)).real();
    }
    return acc;
  };

  const int coarse = 4096;
  double best_s = 0.0, best_c = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < coarse; ++i) {
    const double s = static_cast<double>(i) / coarse;
    const double v = corr(s);
    if (v > best_c) {
      best_c = v;
      best_s = s;
    }
  }
  double lo = best_s - 1.0 / coarse, hi = best_s + 1.0 / coarse;
  for (int it = 0; it < 100; ++it) {
    const double s1 = lo + (hi - lo) / 3.0, s2 = hi - (hi - lo) / 3.0;
    if (corr(s1) < corr(s2)) {
      lo = s1;
    } else {
      hi = s2;
    }
  }
  const double s_opt = 0.5 * (lo + hi);

  const double ea = spectral_energy(uT);
  const double eb = spectral_energy(traj.states.front());
  const double err2 = std::max(0.0, ea + eb - 2.0 * corr(s_opt));
  ShapeError res;
  res.rel_error = std::sqrt(err2) / std::sqrt(eb);
  res.shift = s_opt - std::floor(s_opt);
  return res;
}

}  // namespace muhs
