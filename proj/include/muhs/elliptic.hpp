#pragma once

namespace muhs {

/// Elliptic integrals in the parameter convention
///   F(phi|r) = int_0^phi (1 - r sin^2 t)^{-1/2} dt
///   E(phi|r) = int_0^phi (1 - r sin^2 t)^{1/2} dt
///   K(r) = F(pi/2|r),  E_complete(r) = E(pi/2|r).
/// r > 1 is allowed for the incomplete kinds as long as r sin^2 phi <= 1;
/// at r sin^2 phi = 1 the F-integrand has an integrable inverse-square-root
/// endpoint singularity.
enum class EllipticKind { F, E_incomplete, K, E_complete };

/// Evaluated via Carlson symmetric forms (absolute error well under 1e-12).
/// phi is ignored for the complete kinds.  Throws EllipticDomainError when
/// r sin^2 t > 1 inside the range (or r >= 1 for K).
double elliptic(EllipticKind kind, double phi, double r);

// Carlson symmetric standard forms (duplication algorithm).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

// Convenience names used throughout the wave machinery.
double ellint_K(double r);
double ellint_E(double r);
double ellint_F(double phi, double r);
double ellint_E_inc(double phi, double r);

// F and E at the turning point r sin^2 phi = 1 (r > 1), taken with exact
// sin^2/cos^2 values.  Going through phi = asin(sqrt(s2)) instead loses
// ~1e-8: the Carlson forms have square-root sensitivity in the vanishing
// argument, so the O(1e-16) rounding of 1 - r sin^2 phi is amplified.
double ellint_F_turning(double s2, double c2);
double ellint_E_turning(double s2, double c2, double r);

}  // namespace muhs
