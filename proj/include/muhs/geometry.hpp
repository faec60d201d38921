#pragma once

#include <Eigen/Core>

#include "muhs/field.hpp"

namespace muhs {

/// Orthonormalized 2-plane of tangent vectors with its Gram matrix.
struct TangentPair {
  RealField u;
  RealField v;
  Eigen::Matrix2d gram;
};

/// Right-invariant metric at the identity:
///   <u, v> = mu(u) mu(v) + int u_x v_x.
double metric_inner(const RealField& u, const RealField& v);

/// Christoffel map
///   Gamma(u, v) = -A^{-1} d_x (mu(u) v + mu(v) u + (1/2) u_x v_x),
/// symmetric in (u, v).
RealField christoffel(const RealField& u, const RealField& v);

/// Coadjoint operator ad*_v(u) = A^{-1}(2 v_x A u + v A u_x); satisfies
/// <ad*_v(u), w> = <u, v_x w - v w_x>.
RealField coadjoint(const RealField& v, const RealField& u);

/// <R(u,v)v, u> from the Christoffel form:
///   <G(u,v), G(u,v)> - <G(u,u), G(v,v)> - 3 mu(u_x v)^2.
double curvature_quadratic(const RealField& u, const RealField& v);

/// <R(u,v)v, u> from the fully expanded quadrature form (independent code
/// path; agreement with curvature_quadratic is a structural test).
double curvature_expanded(const RealField& u, const RealField& v);

/// Sectional curvature of span(u, v), normalized by the Gram determinant;
/// invariant under invertible recombination of the pair.  Throws
/// DegeneratePlane when the Gram determinant is below 1e-12.
double sectional(const RealField& u, const RealField& v);

/// Gram-Schmidt in the metric with the second vector projected to zero mean
/// first, so the output satisfies <u,u> = <v,v> = 1, <u,v> = 0, mu(v) = 0.
TangentPair orthonormal_pair(const RealField& u, const RealField& v);

}  // namespace muhs
