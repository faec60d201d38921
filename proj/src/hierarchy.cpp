#include "muhs/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "muhs/evolution.hpp"
#include "muhs/spectral.hpp"

namespace muhs {

namespace detail {

void require_positive_momentum(const RealField& m, const char* where) {
  const double lo = m.samples().minCoeff();
  const double hi = m.samples().maxCoeff();
  if (!(lo > 1e-8 * hi) || !(lo > 0.0)) {
    throw NonPositiveMomentum(std::string(where) +
                              ": momentum not positive (min " +
                              std::to_string(lo) + ")");
  }
}

}  // namespace detail

namespace {

RealField pow_field(const RealField& m, double p) {
  return RealField(m.grid(), m.samples().pow(p));
}

}  // namespace

RealField momentum(const RealField& u) { return apply_A(u); }

RealField b1(const RealField& m, const RealField& f) {
  const RealField fx = derivative(f, 1);
  return -(dealias(m * fx) + derivative(dealias(m * f), 1));
}

RealField b2(const RealField& f) { return derivative(f, 3); }

double functional_value(int id, const RealField& u) {
  switch (id) {
    case -2: {
      const RealField m = momentum(u);
      detail::require_positive_momentum(m, "functional_value(-2)");
      const RealField mx = derivative(m, 1);
      return -1.0 / 16.0 * integral(mx * mx * pow_field(m, -2.5));
    }
    case -1: {
      const RealField m = momentum(u);
      detail::require_positive_momentum(m, "functional_value(-1)");
      return integral(pow_field(m, 0.5));
    }
    case 0:
      return integral(momentum(u));
    case 1:
      return 0.5 * integral(u * momentum(u));
    case 2: {
      const RealField ux = derivative(u, 1);
      return integral(mean(u) * (u * u) + 0.5 * (u * (ux * ux)));
    }
    default:
      throw InvalidInput("functional_value: id must be in [-2, 2]");
  }
}

RealField gradient(int id, const RealField& u) {
  switch (id) {
    case 2: {
      const RealField ux = derivative(u, 1);
      const RealField uxx = derivative(u, 2);
      const RealField arg =
          mean(u * u) + 2.0 * mean(u) * u - 0.5 * (ux * ux) - u * uxx;
      return apply_A_inverse(arg);
    }
    case 1:
      return u;
    case 0:
      return RealField::constant(u.grid(), 1.0);
    case -1: {
      const RealField m = momentum(u);
      detail::require_positive_momentum(m, "gradient(-1)");
      return 0.5 * pow_field(m, -0.5);
    }
    case -2: {
      const RealField m = momentum(u);
      detail::require_positive_momentum(m, "gradient(-2)");
      const RealField mx = derivative(m, 1);
      const RealField mxx = derivative(m, 2);
      return (1.0 / 8.0) * (mxx * pow_field(m, -2.5)) -
             (5.0 / 32.0) * (mx * mx * pow_field(m, -3.5));
    }
    case -3: {
      const RealField m = momentum(u);
      detail::require_positive_momentum(m, "gradient(-3)");
      const RealField mx = derivative(m, 1);
      const RealField mxx = derivative(m, 2);
      const RealField mx3 = derivative(m, 3);
      const RealField mx4 = derivative(m, 4);
      const RealField mx2 = mx * mx;
      return (1155.0 / 1024.0) * (mx2 * mx2 * pow_field(m, -6.5)) -
             (231.0 / 128.0) * (mx2 * mxx * pow_field(m, -5.5)) +
             (21.0 / 64.0) * (mxx * mxx * pow_field(m, -4.5)) +
             (7.0 / 16.0) * (mx * mx3 * pow_field(m, -4.5)) -
             (1.0 / 16.0) * (mx4 * pow_field(m, -3.5));
    }
    default:
      throw InvalidInput("gradient: id must be in [-3, 2]");
  }
}

RealField lower(const RealField& f, const RealField& m) {
  detail::require_positive_momentum(m, "lower");
  const RealField inv_sqrt_m = pow_field(m, -0.5);
  const RealField integrand = inv_sqrt_m * derivative(f, 3);
  const double drift = mean(integrand);
  const double scale = std::max(1.0, max_abs(integrand));
  if (std::abs(drift) > 1e-8 * scale) {
    throw NonPeriodicAntiderivative(
        "lower: (1/sqrt m) f_xxx has nonzero mean " + std::to_string(drift));
  }
  const RealField p = detail::zero_mean_antiderivative(integrand);
  return -0.5 * (inv_sqrt_m * p);
}

double hn_from_gradient(int n, const RealField& u) {
  if (n < 1 || n > 3) throw InvalidInput("hn_from_gradient: n must be 1..3");
  const RealField m = momentum(u);
  detail::require_positive_momentum(m, "hn_from_gradient");
  return 1.0 / (1.5 - n) * integral(m * gradient(-n, u));
}

RealField flow_field(int id, const RealField& u) {
  return b1(momentum(u), gradient(id, u));
}

std::pair<double, double> bihamiltonian_residual(const RealField& u) {
  const RealField m = momentum(u);
  const RealField mt = b1(m, u);
  const RealField via_b2 = b2(gradient(2, u));
  const RealField ux = derivative(u, 1);
  const RealField mx = derivative(m, 1);
  const RealField direct = -2.0 * (m * ux) - mx * u;
  return {max_abs(mt - via_b2), max_abs(mt - direct)};
}

VirasoroPoint virasoro_coadjoint(const RealField& v, double /*b*/,
                                 const VirasoroPoint& p) {
  const RealField mx = derivative(p.m, 1);
  const RealField vx = derivative(v, 1);
  const RealField vxxx = derivative(v, 3);
  return {mx * v + 2.0 * (p.m * vx) + p.a * vxxx, 0.0};
}

RealField frozen_flow(const RealField& h_grad, const VirasoroPoint& p0) {
  const RealField m0x = derivative(p0.m, 1);
  const RealField gx = derivative(h_grad, 1);
  const RealField gxxx = derivative(h_grad, 3);
  return -(m0x * h_grad) - 2.0 * (p0.m * gx) - p0.a * gxxx;
}

double virasoro_equivalence_residual(const RealField& u, double k) {
  // Route 1: evolution form.
  const RealField route1 = apply_A(rhs(u, k));

  // The central coordinate a = -k; both remaining routes act on the shifted
  // field v = u + a, whose momentum is m + a.
  const RealField v = u - k;
  const VirasoroPoint shifted{momentum(v), -k};

  // Route 2: Lie-Poisson, m_t = -ad*_{(v,a)}(m+a, a).
  const RealField route2 = -virasoro_coadjoint(v, 0.0, shifted).m;

  // Route 3: bracket frozen at (0,-1) applied to dH_2/dm with the k m term.
  const RealField vx = derivative(v, 1);
  const RealField vxx = derivative(v, 2);
  const RealField grad2 = apply_A_inverse(
      mean(v * v) + 2.0 * mean(v) * v - 0.5 * (vx * vx) - v * vxx +
      k * shifted.m);
  const VirasoroPoint frozen_at{RealField::zero(u.grid()), -1.0};
  const RealField route3 = frozen_flow(grad2, frozen_at);

  return std::max({max_abs(route1 - route2), max_abs(route1 - route3),
                   max_abs(route2 - route3)});
}

}  // namespace muhs
