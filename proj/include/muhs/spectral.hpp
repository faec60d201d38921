#pragma once

#include "muhs/field.hpp"

namespace muhs {

/// Spatial mean mu(u) = integral of u over the circle (the zeroth Fourier
/// coefficient; the trapezoid sum h*sum u_j is exact for trig polynomials).
double mean(const RealField& u);

/// Integral over the circle. Equals mean(u) since the circle has length 1.
double integral(const RealField& u);

/// Spectral derivative of the given order. The Nyquist mode is zeroed for
/// odd orders so the result stays real.
RealField derivative(const RealField& u, int order);

/// Inertia operator A u = mu(u) - u_xx: keeps the mean, multiplies the k-th
/// coefficient by (2 pi k)^2 for k != 0.
RealField apply_A(const RealField& u);

enum class InverseMethod { Spectral, Quadrature };

/// Inverse of the inertia operator.
///
/// Spectral: divide nonzero coefficients by (2 pi k)^2, keep the mean.
/// Quadrature: the explicit closed form
///   u(x) = (x^2/2 - x/2 + 13/12) mu(w) + (x - 1/2) I2[w]
///          - int_0^x int_0^y w  + I3[w],
/// where I2, I3 are the circle averages of the repeated antiderivatives,
/// assembled from spectrally exact antiderivatives with the polynomial
/// (linear/quadratic in x) pieces handled analytically.  The two methods
/// agree to kEpsOperator relative; their agreement is a structural test of
/// the closed form.
RealField apply_A_inverse(const RealField& w,
                          InverseMethod method = InverseMethod::Spectral);

/// A^{-1} d/dx via the closed identity
///   A^{-1} w_x = (x - 1/2) mu(w) - int_0^x w + mean(int_0^x w),
/// which collapses to minus the zero-mean antiderivative of w - mu(w).
RealField ainv_dx(const RealField& w);

/// 2/3-rule truncation: zero all coefficients with |k| > n/3.
RealField dealias(const RealField& u);

/// Trigonometric interpolant evaluated at an arbitrary point (mod 1).
/// Exact on band-limited fields; reproduces samples at the nodes.
double interpolate(const RealField& u, double x);

/// Vectorized interpolation at many points.
Eigen::ArrayXd interpolate_many(const RealField& u, const Eigen::ArrayXd& xs);

/// Discrete L2 norm sqrt(h * sum u_j^2).
double l2_norm(const RealField& u);

/// Discrete L1 norm h * sum |u_j|.
double l1_norm(const RealField& u);

/// Sup norm over the nodes.
double max_abs(const RealField& u);

/// Sum of |u_hat_k|^2 (equals h * sum u_j^2 by the discrete Parseval
/// identity).
double spectral_energy(const RealField& u);

namespace detail {
/// Zero-mean periodic antiderivative of the zero-mean part of w
/// (coefficients divided by 2 pi i k; mean coefficient set to zero).
RealField zero_mean_antiderivative(const RealField& w);
}  // namespace detail

}  // namespace muhs
