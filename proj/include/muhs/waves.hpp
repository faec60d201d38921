#pragma once

#include <vector>

#include "muhs/field.hpp"

namespace muhs {

/// Traveling-wave families.  For mu > 0: Smooth (m < M < c), Cusped
/// (m < c < M, crest cusp at phi = c), Anticusped (c < m < M, trough
/// anticusp at phi = c), SolitaryAnticusped (c < m = M, line solution).
/// SolitaryCusped is the mirror-image solitary wave of the mu < 0 problem.
enum class WaveFamily {
  Smooth,
  Cusped,
  Anticusped,
  SolitaryAnticusped,
  SolitaryCusped,
  Unbounded
};

const char* to_string(WaveFamily family);

/// One traveling wave: speed c, profile range endpoints m_lo/M_hi, the
/// equation parameter mu, and the quadratic coefficients defined by
///   -2 mu phi^2 + a phi + b = 2 mu (M - phi)(phi - m).
struct WaveParams {
  double c = 0.0;
  double m_lo = 0.0;
  double M_hi = 0.0;
  double mu = 1.0;
  WaveFamily family = WaveFamily::Unbounded;
  double a_coef = 0.0;
  double b_coef = 0.0;

  static WaveParams make(double c, double m_lo, double M_hi, double mu);
};

/// Period and raw integral of phi over one period.  The integral (not the
/// per-length average) is the quantity that scales as 1/sqrt(mu) and enters
/// the mean constraint.
struct WaveStats {
  double period = 0.0;
  double mean_integral = 0.0;
};

/// One period of a wave on uniform positions, anchored with the trough at
/// x = 0 (solitary profiles use a symmetric window centered on the crest or
/// trough instead).  mean is the per-unit-length average over the samples.
struct WaveProfile {
  WaveParams params;
  Eigen::ArrayXd xs;
  Eigen::ArrayXd phis;
  double period = 0.0;
  double mean = 0.0;
  std::vector<double> cusp_xs;
};

/// Family classification; mu < 0 inputs are reduced through the sign
/// symmetry (mu, phi, c) -> (-mu, -phi, -c) and the family of the actual
/// wave is reported (crest cusps mirror to trough anticusps).
WaveFamily classify_params(double c, double m_lo, double M_hi, double mu);

/// Closed elliptic-integral period and mean-integral for the bounded
/// families; mu < 0 handled by the sign symmetry (the mean flips sign).
WaveStats wave_stats(double c, double m_lo, double M_hi, double mu);

/// The value of mu for which the (m, M) wave satisfies the mean constraint:
/// mu = I1^{2/3} with I1 the mu = 1 mean-integral.  Throws NonPositiveMean
/// when I1 <= 0 (the solitary-wave obstruction).
double mu_constraint(double c, double m_lo, double M_hi);

/// Period of the constrained wave.  For smooth/cusped this evaluates the
/// closed formula
///   2 * 3^{1/3} sqrt(c-m) E / (sqrt(c-m) ((2(m+M)-c)E + (c-M)K))^{1/3}
/// (with the incomplete replacements on the cusped branch), which must agree
/// with wave_stats at mu_constraint to 1e-9.
double muhs_period(double c, double m_lo, double M_hi);

/// Finds M with unit period by bracketing (64 geometric probes) and
/// bisection to |period - 1| < 1e-10.  Search interval: (m_anchor, c) for
/// Smooth, (c, inf) for Cusped.  Requires c > 0 and 0 < m_anchor < c;
/// speeds c < 0 are reachable as mirror images under the sign symmetry.
/// Throws NoBracket (with the scanned range) when the period map does not
/// cross 1.
WaveParams solve_period_one(double c, WaveFamily family, double m_anchor);

/// Samples the wave over one period: dense sweep of the quadrature angle,
/// closed-form x(theta), then monotone piecewise-cubic inversion onto
/// `nsamples` uniform positions, with even reflection about crest and
/// trough.  Cusp positions are recorded for the cusped/anticusped families.
WaveProfile profile(const WaveParams& params, int nsamples);

/// Solitary wave on the line from the closed form
///   sqrt(2/-mu) (sqrt(c - phi) - sqrt(c) artanh sqrt((c-phi)/c)) = x - x0,
/// equivalently phi = c sech^2(xi), x = sqrt(2c/-mu)(xi - tanh xi), sampled
/// on the window where |phi| > 1e-10 |c|.  Requires sign(c) = -sign(mu);
/// the mean-integral has the sign opposite to mu (which is why these never
/// satisfy the mean constraint).
WaveProfile solitary_profile(double c, double mu, int nsamples);

/// Max over trig test functions psi_k (k <= test_modes, plus the constant)
/// of |int (phi_x^2 + 4 mu phi - a) psi_k - int (phi - c)^2 psi_k''| over
/// one period, with quadrature in the angle variable (never differencing
/// phi across cusps; the cusped branch uses the t^2 = theta_1 - theta
/// endpoint substitution).
double weak_residual(const WaveProfile& profile, int test_modes);

struct ShapeError {
  double rel_error = 0.0;
  double shift = 0.0;  // optimal translation, in [0, 1)
};

/// Evolves the sampled profile with the evolution module over t_end and
/// returns the shift-minimized relative L2 distance to the initial profile
/// plus the optimal shift (which should equal c t_end mod 1).  Smooth
/// period-one waves only.
ShapeError shape_preservation_error(const WaveParams& params, int grid_n,
                                    double t_end);

}  // namespace muhs
