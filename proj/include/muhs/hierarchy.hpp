#pragma once

#include <utility>

#include "muhs/field.hpp"

namespace muhs {

/// Point (m, a) on the dual of the Virasoro algebra: a momentum field paired
/// with the central coordinate.
struct VirasoroPoint {
  RealField m;
  double a = 0.0;
};

/// Momentum m = A u = mu(u) - u_xx.
RealField momentum(const RealField& u);

/// First Hamiltonian operator B1(m) f = -(m f_x + (m f)_x), products
/// dealiased.
RealField b1(const RealField& m, const RealField& f);

/// Second Hamiltonian operator B2 f = f_xxx.
RealField b2(const RealField& f);

/// Conserved functionals H_id for id in {-2,...,2}:
///   H_{-2} = -(1/16) int m_x^2 / m^{5/2}
///   H_{-1} = int sqrt(m)
///   H_0    = int m
///   H_1    = (1/2) int u m
///   H_2    = int (mu(u) u^2 + (1/2) u u_x^2)
/// Ids -2 and -1 require m > 0 everywhere.
double functional_value(int id, const RealField& u);

/// Variational derivatives dH_id/dm for id in {-3,...,2} (id = -3 is
/// gradient-only; its functional value comes from hn_from_gradient).
RealField gradient(int id, const RealField& u);

/// One step down the ladder:
///   dH_{n-1}/dm = -(1/(2 sqrt m)) * P(x),   P' = (1/sqrt m) f_xxx,
/// with P the zero-mean periodic antiderivative.  Requires the integrand to
/// have (numerically) zero mean; the additive kernel multiple of 1/sqrt(m)
/// is fixed by the zero-mean choice of P.
RealField lower(const RealField& f, const RealField& m);

/// Local-functional identity H_{-n} = (1/(3/2-n)) int m dH_{-n}/dm,
/// n in {1,2,3}.
double hn_from_gradient(int n, const RealField& u);

/// Commuting flow m_t = B1(m) dH_id/dm.
RealField flow_field(int id, const RealField& u);

/// Sup-norm residuals of the two Hamiltonian routes to m_t:
///   first:  |B1(m) u - B2 dH_2/dm|
///   second: |B1(m) u - (-2 m u_x - m_x u)|
std::pair<double, double> bihamiltonian_residual(const RealField& u);

/// Coadjoint action on the Virasoro dual:
///   ad*_{(v,b)}(m,a) = (m_x v + 2 m v_x + a v_xxx, 0).
/// The algebra-side central coordinate b does not enter.
VirasoroPoint virasoro_coadjoint(const RealField& v, double b,
                                 const VirasoroPoint& p);

/// Hamiltonian flow of the bracket frozen at p0:
///   m_t = -m0_x g - 2 m0 g_x - a0 g_xxx   for g = dh/dm.
RealField frozen_flow(const RealField& h_grad, const VirasoroPoint& p0);

/// Max pairwise sup-difference of m_t computed three ways: from the
/// evolution form (A applied to the right-hand side), from the Lie-Poisson
/// coadjoint route at the shifted point (a = -k), and from the bracket
/// frozen at (0,-1) applied to dH_2/dm with the k m term.
double virasoro_equivalence_residual(const RealField& u, double k);

namespace detail {
/// Throws NonPositiveMomentum unless min m > 1e-8 * max m over the nodes.
void require_positive_momentum(const RealField& m, const char* where);
}  // namespace detail

}  // namespace muhs
