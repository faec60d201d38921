#include "muhs/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "muhs/errors.hpp"

namespace muhs {

namespace {

[[noreturn]] void domain_error(const char* what, double phi, double r) {
  std::ostringstream os;
  os << "elliptic: " << what << " (phi = " << phi << ", r = " << r << ")";
  throw EllipticDomainError(os.str());
}

}  // namespace

double carlson_rf(double x, double y, double z) {
  constexpr double errtol = 0.0025;  // series error ~ errtol^6
  if (x < 0 || y < 0 || z < 0 || x + y == 0 || y + z == 0 || z + x == 0) {
    domain_error("rf arguments out of domain", x, y);
  }
  double mu = 0, dx = 0, dy = 0, dz = 0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    mu = (x + y + z) / 3.0;
    dx = (mu - x) / mu;
    dy = (mu - y) / mu;
    dz = (mu - z) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
  constexpr double errtol = 0.0015;
  if (x < 0 || y < 0 || x + y == 0 || z <= 0) {
    domain_error("rd arguments out of domain", x, y);
  }
  double sum = 0.0, fac = 1.0;
  double mu = 0, dx = 0, dy = 0, dz = 0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    mu = 0.2 * (x + y + 3.0 * z);
    dx = (mu - x) / mu;
    dy = (mu - y) / mu;
    dz = (mu - z) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) break;
  }
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 +
              ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
              dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea))) /
             (mu * std::sqrt(mu));
}

double ellint_K(double r) {
  if (r >= 1.0) domain_error("K(r) requires r < 1", std::numbers::pi / 2, r);
  return carlson_rf(0.0, 1.0 - r, 1.0);
}

double ellint_E(double r) {
  if (r > 1.0) domain_error("E(r) requires r <= 1", std::numbers::pi / 2, r);
  if (r == 1.0) return 1.0;
  return carlson_rf(0.0, 1.0 - r, 1.0) - r / 3.0 * carlson_rd(0.0, 1.0 - r, 1.0);
}

namespace {

// Shared setup for the incomplete kinds: clamps phi to [0, pi/2] within
// roundoff and computes y = 1 - r sin^2 phi, clamped at zero when the
// endpoint is singular only through rounding.
struct IncompleteArgs {
  double s, c2, y;
};

IncompleteArgs incomplete_setup(double phi, double r) {
  constexpr double half_pi = std::numbers::pi / 2;
  if (phi < -1e-12 || phi > half_pi + 1e-12) {
    domain_error("phi must lie in [0, pi/2]", phi, r);
  }
  phi = std::clamp(phi, 0.0, half_pi);
  const double s = std::sin(phi);
  const double c2 = std::cos(phi) * std::cos(phi);
  double y = 1.0 - r * s * s;
  if (y < 0.0) {
    if (y < -1e-12) domain_error("r sin^2 phi exceeds 1", phi, r);
    y = 0.0;
  }
  return {s, c2, y};
}

}  // namespace

double ellint_F(double phi, double r) {
  const auto [s, c2, y] = incomplete_setup(phi, r);
  if (s == 0.0) return 0.0;
  return s * carlson_rf(c2, y, 1.0);
}

double ellint_E_inc(double phi, double r) {
  const auto [s, c2, y] = incomplete_setup(phi, r);
  if (s == 0.0) return 0.0;
  if (y == 0.0 && c2 == 0.0) return 1.0;  // E(pi/2 | 1)
  return s * carlson_rf(c2, y, 1.0) -
         r / 3.0 * s * s * s * carlson_rd(c2, y, 1.0);
}

double ellint_F_turning(double s2, double c2) {
  return std::sqrt(s2) * carlson_rf(c2, 0.0, 1.0);
}

double ellint_E_turning(double s2, double c2, double r) {
  const double s = std::sqrt(s2);
  return s * carlson_rf(c2, 0.0, 1.0) -
         r / 3.0 * s * s2 * carlson_rd(c2, 0.0, 1.0);
}

double elliptic(EllipticKind kind, double phi, double r) {
  switch (kind) {
    case EllipticKind::F: return ellint_F(phi, r);
    case EllipticKind::E_incomplete: return ellint_E_inc(phi, r);
    case EllipticKind::K: return ellint_K(r);
    case EllipticKind::E_complete: return ellint_E(r);
  }
  throw InvalidInput("elliptic: unknown kind");
}

}  // namespace muhs
