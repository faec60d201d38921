#pragma once

#include <utility>
#include <vector>

#include "muhs/field.hpp"

namespace muhs {

struct EvolutionConfig {
  int n = 256;
  double t_end = 1.0;
  double cfl = 0.3;
  double dt_min = 1e-9;
  double k = 0.0;      // central (Virasoro) parameter; 0 is the plain equation
  bool dealias = true;
  double blowup_slope_threshold = 1e4;
};

/// Per accepted step: conserved-quantity values and stepping data.
/// hm1 is NaN whenever the momentum is not positive everywhere.
struct StepDiagnostics {
  double t = 0.0;
  double mu = 0.0;
  double h1 = 0.0;
  double h0 = 0.0;
  double h2 = 0.0;
  double hm1 = 0.0;
  double r0 = 0.0;
  double min_ux = 0.0;
  double max_abs_u = 0.0;
  double dt = 0.0;
};

struct TrajectoryVerdict {
  enum class Tag { Completed, NumericalBlowup };
  enum class Reason { None, SlopeThreshold, DtCollapse, NonFinite };
  Tag tag = Tag::Completed;
  Reason reason = Reason::None;
  double t_est = 0.0;  // extrapolated blow-up time (NumericalBlowup only)
};

/// Time-ordered solution samples (at most 512, uniformly decimated in t)
/// plus per-step diagnostics and the run verdict.  Carries its initial state
/// and configuration so the run can be reproduced deterministically.
struct Trajectory {
  EvolutionConfig config;
  RealField initial;
  std::vector<double> times;
  std::vector<RealField> states;
  std::vector<StepDiagnostics> diagnostics;
  TrajectoryVerdict verdict;
};

/// Criterion-backed classification of initial data: which
/// global-existence or blow-up certificate applies, if any.
struct Verdict {
  enum class Tag {
    Global,
    BlowupCertified,
    BlowupHS,
    SteadyConstant,
    Indeterminate
  };
  Tag tag = Tag::Indeterminate;
  double t_bound = 0.0;  // BlowupCertified: upper bound on the blow-up time
  double t_crit = 0.0;   // BlowupHS: critical time of the reduced equation
  std::string justification;

  bool certifies_blowup() const {
    return tag == Tag::BlowupCertified || tag == Tag::BlowupHS;
  }
};

const char* to_string(Verdict::Tag tag);

/// Lagrangian flow eta(t, x_j) of a trajectory with its Jacobian d_x eta,
/// sampled at the trajectory's snapshot times.  eta is kept unwrapped
/// (monotone in j).
struct FlowMap {
  std::vector<double> times;
  std::vector<Eigen::ArrayXd> eta;
  std::vector<Eigen::ArrayXd> eta_x;
};

/// Evolution right-hand side
///   u_t = -u u_x - A^{-1} d_x (2 mu(u) u - 2 k u + (1/2) u_x^2).
/// Applying A reproduces -u_txx = -2 mu(u) u_x + 2 k u_x + 2 u_x u_xx
/// + u u_xxx; k = 0 is the plain equation.
RealField rhs(const RealField& u, double k);

/// Sup-norm residual between d_x of the evolution right-hand side and the
/// integrated form 2 mu(u) u - u u_xx - (1/2) u_x^2 + r0 with
/// r0 = -2 mu(u)^2 - (1/2) mu(u_x^2).
double integrated_form_residual(const RealField& u);

/// Classical RK4 with CFL-limited steps dt = min(cfl*h/(max|u|+1), cfl*h).
/// Dealiases after every right-hand-side evaluation when enabled.  Declares
/// NumericalBlowup when dt collapses below dt_min, the slope passes the
/// threshold, or the state stops being finite; t_est extrapolates
/// -1/min u_x linearly over the last 20 accepted steps (Riccati behavior of
/// the slope equation).
Trajectory integrate(const RealField& u0, const EvolutionConfig& cfg);

Verdict classify_initial(const RealField& u0);

/// Critical time of the zero-mean (Hunter-Saxton) reduction:
///   T = (2/sqrt(-2a)) atan(sqrt(-2a)/|u0'(x0)|),  a = -(1/2) int u0_x^2,
/// minimized over nodes with u0_x < 0.  Requires mu(u0) = 0 and nonconstant
/// data.
double hs_blowup_time(const RealField& u0);

/// Integrates eta_t = u(t, eta), (d_x eta)_t = u_x(t, eta) d_x eta alongside
/// a deterministic re-run of the trajectory's stepping, with trigonometric
/// interpolation for off-grid evaluation.  Throws DiffeomorphismLoss if
/// d_x eta stops being positive.
FlowMap flow_map(const Trajectory& traj);

/// max over stored times and nodes of
///   |A u(t, eta(t,x_j)) (d_x eta)^2 - A u0(x_j)|.
double local_conservation_residual(const Trajectory& traj, const FlowMap& fm);

/// (max |u_x|, discrete-L1 norm of A u).  Sanity bound:
/// max|u_x| <= 2 ||A u||_{L1} (the explicit kernel gives constant 3/2; 2 is
/// the conservative grid constant).
std::pair<double, double> uxinf_l1_bound_check(const RealField& u);

/// Smallest `count` values nu for the periodic problem -psi_xx = nu m psi
/// (nu = -lambda of the spectral problem psi_xx = lambda m psi), from the
/// dense symmetric generalized eigenproblem against diag(m).  Sorted
/// ascending; the first is 0 (constant eigenfunction).  Requires m > 0 and
/// count <= n/4.
std::vector<double> hill_spectrum(const RealField& m, int count);

/// Max over stored times of the relative deviation of the first `count`
/// nonzero eigenvalues from their t = 0 values.
double isospectrality_drift(const Trajectory& traj, int count);

}  // namespace muhs
