#include "muhs/evolution.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "muhs/spectral.hpp"

namespace muhs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxSnapshots = 512;
constexpr int kExtrapolationWindow = 20;

void validate(const EvolutionConfig& cfg, const RealField& u0) {
  if (cfg.t_end < 0.0) throw InvalidInput("integrate: t_end must be >= 0");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) {
    throw InvalidInput("integrate: cfl must be in (0, 1]");
  }
  if (!(cfg.dt_min > 0.0)) throw InvalidInput("integrate: dt_min must be > 0");
  if (u0.size() != cfg.n) {
    throw InvalidInput("integrate: u0 grid size " + std::to_string(u0.size()) +
                       " != config n " + std::to_string(cfg.n));
  }
}

// Linear extrapolation of y = -1/min_ux over the recent-step window.  Near
// breakdown the slope obeys a Riccati inequality, so y decays linearly to 0
// at the blow-up time.
class BlowupExtrapolator {
 public:
  void push(double t, double min_ux) {
    if (window_.size() == kExtrapolationWindow) window_.pop_front();
    window_.push_back({t, min_ux});
  }

  double estimate(double fallback) const {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& [t, m] : window_) {
      if (m >= 0.0) continue;
      const double y = -1.0 / m;
      sx += t;
      sy += y;
      sxx += t * t;
      sxy += t * y;
      ++cnt;
    }
    if (cnt < 2) return fallback;
    const double det = cnt * sxx - sx * sx;
    if (det == 0.0) return fallback;
    const double slope = (cnt * sxy - sx * sy) / det;
    const double icept = (sy * sxx - sx * sxy) / det;
    if (slope >= 0.0) return fallback;
    return std::max(fallback, -icept / slope);
  }

 private:
  struct Point {
    double t, min_ux;
  };
  std::deque<Point> window_;
};

StepDiagnostics make_diagnostics(double t, const RealField& u, double dt) {
  StepDiagnostics d;
  const RealField ux = derivative(u, 1);
  const RealField m = apply_A(u);
  d.t = t;
  d.mu = mean(u);
  d.h0 = integral(m);
  d.h1 = 0.5 * integral(u * m);
  d.h2 = integral(d.mu * (u * u) + 0.5 * (u * (ux * ux)));
  d.hm1 = m.samples().minCoeff() > 0.0
              ? integral(RealField(m.grid(), m.samples().sqrt()))
              : kNaN;
  d.r0 = -2.0 * d.mu * d.mu - 0.5 * mean(ux * ux);
  d.min_ux = ux.samples().minCoeff();
  d.max_abs_u = max_abs(u);
  d.dt = dt;
  return d;
}

struct EngineResult {
  Trajectory traj;
  FlowMap fm;
};

EngineResult run_engine(const RealField& u0, const EvolutionConfig& cfg,
                        bool with_flow) {
  validate(cfg, u0);
  const PeriodicGrid g = u0.grid();

  EngineResult out;
  Trajectory& traj = out.traj;
  traj.config = cfg;
  traj.initial = u0;

  RealField u = cfg.dealias ? dealias(u0) : u0;
  double t = 0.0;
  Eigen::ArrayXd eta = g.nodes();
  Eigen::ArrayXd eta_x = Eigen::ArrayXd::Ones(g.n);

  const auto f = [&cfg](const RealField& s) {
    RealField r = rhs(s, cfg.k);
    return cfg.dealias ? dealias(r) : r;
  };

  const double snap_dt =
      cfg.t_end > 0.0 ? cfg.t_end / (kMaxSnapshots - 1)
                      : std::numeric_limits<double>::infinity();
  double next_snap = snap_dt;

  const auto record = [&](double tt, const RealField& s) {
    traj.times.push_back(tt);
    traj.states.push_back(s);
    if (with_flow) {
      out.fm.times.push_back(tt);
      out.fm.eta.push_back(eta);
      out.fm.eta_x.push_back(eta_x);
    }
  };

  record(0.0, u);
  traj.diagnostics.push_back(make_diagnostics(0.0, u, 0.0));

  BlowupExtrapolator extrap;
  extrap.push(0.0, traj.diagnostics.back().min_ux);

  const double t_eps = 1e-14 * std::max(1.0, cfg.t_end);

  while (t < cfg.t_end - t_eps) {
    const double dt_cfl =
        std::min(cfg.cfl * g.h / (max_abs(u) + 1.0), cfg.cfl * g.h);
    const double dt = std::min(dt_cfl, cfg.t_end - t);
    if (dt_cfl < cfg.dt_min) {
      traj.verdict = {TrajectoryVerdict::Tag::NumericalBlowup,
                      TrajectoryVerdict::Reason::DtCollapse,
                      extrap.estimate(t)};
      break;
    }

    const RealField k1 = f(u);
    const RealField u2 = u + 0.5 * dt * k1;
    const RealField k2 = f(u2);
    const RealField u3 = u + 0.5 * dt * k2;
    const RealField k3 = f(u3);
    const RealField u4 = u + dt * k3;
    const RealField k4 = f(u4);
    RealField u_new =
        u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (with_flow) {
      const auto stage = [&](const RealField& s, const Eigen::ArrayXd& pos,
                             const Eigen::ArrayXd& jac,
                             Eigen::ArrayXd& dpos, Eigen::ArrayXd& djac) {
        dpos = interpolate_many(s, pos);
        djac = interpolate_many(derivative(s, 1), pos) * jac;
      };
      Eigen::ArrayXd e1, w1, e2, w2, e3, w3, e4, w4;
      stage(u, eta, eta_x, e1, w1);
      stage(u2, eta + 0.5 * dt * e1, eta_x + 0.5 * dt * w1, e2, w2);
      stage(u3, eta + 0.5 * dt * e2, eta_x + 0.5 * dt * w2, e3, w3);
      stage(u4, eta + dt * e3, eta_x + dt * w3, e4, w4);
      eta += (dt / 6.0) * (e1 + 2.0 * e2 + 2.0 * e3 + e4);
      eta_x += (dt / 6.0) * (w1 + 2.0 * w2 + 2.0 * w3 + w4);
      if (eta_x.minCoeff() <= 0.0) {
        throw DiffeomorphismLoss(
            "flow_map: d_x eta lost positivity at t = " + std::to_string(t));
      }
    }

    if (!u_new.samples().allFinite()) {
      traj.verdict = {TrajectoryVerdict::Tag::NumericalBlowup,
                      TrajectoryVerdict::Reason::NonFinite,
                      extrap.estimate(t)};
      break;
    }

    t += dt;
    u = std::move(u_new);

    traj.diagnostics.push_back(make_diagnostics(t, u, dt));
    const double min_ux = traj.diagnostics.back().min_ux;
    extrap.push(t, min_ux);

    if (t + 1e-12 >= next_snap &&
        static_cast<int>(traj.times.size()) < kMaxSnapshots) {
      record(t, u);
      next_snap = snap_dt * (std::floor(t / snap_dt) + 1.0);
    }

    if (min_ux < 0.0 && -min_ux > cfg.blowup_slope_threshold) {
      traj.verdict = {TrajectoryVerdict::Tag::NumericalBlowup,
                      TrajectoryVerdict::Reason::SlopeThreshold,
                      extrap.estimate(t)};
      break;
    }
  }

  if (traj.times.back() != t) record(t, u);
  return out;
}

}  // namespace

const char* to_string(Verdict::Tag tag) {
  switch (tag) {
    case Verdict::Tag::Global: return "Global";
    case Verdict::Tag::BlowupCertified: return "BlowupCertified";
    case Verdict::Tag::BlowupHS: return "BlowupHS";
    case Verdict::Tag::SteadyConstant: return "SteadyConstant";
    case Verdict::Tag::Indeterminate: return "Indeterminate";
  }
  return "?";
}

RealField rhs(const RealField& u, double k) {
  const RealField ux = derivative(u, 1);
  const RealField bracket =
      (2.0 * mean(u) - 2.0 * k) * u + 0.5 * (ux * ux);
  return -(u * ux) - ainv_dx(bracket);
}

double integrated_form_residual(const RealField& u) {
  const RealField ux = derivative(u, 1);
  const RealField uxx = derivative(u, 2);
  const double mu = mean(u);
  const double r0 = -2.0 * mu * mu - 0.5 * mean(ux * ux);
  const RealField rhs_int = 2.0 * mu * u - u * uxx - 0.5 * (ux * ux) + r0;
  return max_abs(derivative(rhs(u, 0.0), 1) - rhs_int);
}

Trajectory integrate(const RealField& u0, const EvolutionConfig& cfg) {
  return run_engine(u0, cfg, false).traj;
}

Verdict classify_initial(const RealField& u0) {
  Verdict v;
  std::ostringstream why;
  const double umax = u0.samples().maxCoeff();
  const double umin = u0.samples().minCoeff();
  if (umax - umin <= 1e-12 * std::max(1.0, std::abs(umax))) {
    v.tag = Verdict::Tag::SteadyConstant;
    v.justification = "constant initial data; constants are steady states";
    return v;
  }

  const double mu = mean(u0);
  const RealField m = apply_A(u0);
  const double m_lo = m.samples().minCoeff();
  const double m_hi = m.samples().maxCoeff();
  // Applying A amplifies transform roundoff by (2 pi k)^2, so the sign test
  // must tolerate that noise floor (the threshold family a + cos(2 pi x)
  // touches zero momentum exactly at the global-existence boundary).
  const double sign_tol = 1e-9 * std::max(1.0, std::abs(m_hi));

  if (std::abs(mu) > 1e-12 && (m_lo >= -sign_tol || m_hi <= sign_tol)) {
    v.tag = Verdict::Tag::Global;
    why << "global existence (sign-definite momentum criterion): A u0 "
        << (m_lo >= -sign_tol ? ">= 0" : "<= 0")
        << " everywhere and mu(u0) = " << mu << " != 0";
    v.justification = why.str();
    return v;
  }

  if (std::abs(mu) <= 1e-12) {
    v.tag = Verdict::Tag::BlowupHS;
    v.t_crit = hs_blowup_time(u0);
    why << "zero-mean data obey the Hunter-Saxton reduction; slope Riccati "
           "equation gives T_crit = "
        << v.t_crit;
    v.justification = why.str();
    return v;
  }

  const double ux_l2 = l2_norm(derivative(u0, 1));
  if (4.0 * std::abs(mu) <= ux_l2) {
    const double min_ux = derivative(u0, 1).samples().minCoeff();
    v.tag = Verdict::Tag::BlowupCertified;
    v.t_bound = 2.0 / std::abs(min_ux);
    why << "certified blow-up (mean-vs-slope criterion): 4|mu| = "
        << 4.0 * std::abs(mu) << " <= " << ux_l2
        << " = ||u0'||_L2; T <= " << v.t_bound;
    v.justification = why.str();
    return v;
  }

  why << "no certifying criterion applies: 4|mu| = " << 4.0 * std::abs(mu)
      << " > " << ux_l2 << " = ||u0'||_L2 and A u0 changes sign";
  v.justification = why.str();
  return v;
}

double hs_blowup_time(const RealField& u0) {
  if (std::abs(mean(u0)) > 1e-12) {
    throw InvalidInput(
        "hs_blowup_time: valid only for zero-mean (Hunter-Saxton) data");
  }
  const RealField ux = derivative(u0, 1);
  const double neg = ux.samples().minCoeff();
  if (neg >= 0.0) {
    throw InvalidInput("hs_blowup_time: data must be nonconstant");
  }
  const double a = -0.5 * integral(ux * ux);
  const double s = std::sqrt(-2.0 * a);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < u0.size(); ++j) {
    const double w = ux[j];
    if (w < 0.0) best = std::min(best, 2.0 / s * std::atan(s / -w));
  }
  return best;
}

FlowMap flow_map(const Trajectory& traj) {
  return run_engine(traj.initial, traj.config, true).fm;
}

double local_conservation_residual(const Trajectory& traj, const FlowMap& fm) {
  if (traj.times.size() != fm.times.size()) {
    throw InvalidInput(
        "local_conservation_residual: trajectory and flow map have "
        "different sample counts");
  }
  const Eigen::ArrayXd m0 = apply_A(traj.states.front()).samples();
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const RealField m = apply_A(traj.states[i]);
    const Eigen::ArrayXd along = interpolate_many(m, fm.eta[i]);
    worst = std::max(worst,
                     (along * fm.eta_x[i].square() - m0).abs().maxCoeff());
  }
  return worst;
}

std::pair<double, double> uxinf_l1_bound_check(const RealField& u) {
  return {max_abs(derivative(u, 1)), l1_norm(apply_A(u))};
}

std::vector<double> hill_spectrum(const RealField& m, int count) {
  const int n = m.size();
  if (m.samples().minCoeff() <= 0.0) {
    throw NonPositiveMomentum("hill_spectrum: m must be positive everywhere");
  }
  if (count < 1 || count > n / 4) {
    throw InvalidInput("hill_spectrum: count must be in [1, n/4]");
  }

  // Circulant spectral second-derivative kernel: first column by inverse
  // transform of the multiplier -(2 pi k)^2 against unit-impulse
  // coefficients (1/n each).
  Eigen::ArrayXcd mult(n);
  for (int i = 0; i < n; ++i) {
    const double k = detail::wavenumber(i, n);
    mult[i] = -(2.0 * std::numbers::pi * k) * (2.0 * std::numbers::pi * k) /
              static_cast<double>(n);
  }
  const Eigen::ArrayXd col = detail::inverse_fft(mult);

  Eigen::MatrixXd L(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) L(i, j) = -col[(i - j + n) % n];
  }
  L = 0.5 * (L + L.transpose()).eval();

  const Eigen::MatrixXd B = m.samples().matrix().asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      L, B, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("hill_spectrum: generalized eigensolve failed");
  }
  const Eigen::VectorXd ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + count);
}

double isospectrality_drift(const Trajectory& traj, int count) {
  const auto ref = hill_spectrum(apply_A(traj.states.front()), count + 1);
  double worst = 0.0;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const auto ev = hill_spectrum(apply_A(traj.states[i]), count + 1);
    for (int j = 1; j <= count; ++j) {
      worst = std::max(worst, std::abs(ev[j] - ref[j]) / ref[j]);
    }
  }
  return worst;
}

}  // namespace muhs
