#include "muhs/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace muhs {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double mean(const RealField& u) { return u.samples().mean(); }

double integral(const RealField& u) { return mean(u); }

RealField derivative(const RealField& u, int order) {
  if (order < 1) throw InvalidInput("derivative: order must be >= 1");
  const int n = u.size();
  Eigen::ArrayXcd c = u.spectrum();
  for (int i = 0; i < n; ++i) {
    const int k = detail::wavenumber(i, n);
    if (k == -n / 2 && order % 2 == 1) {
      c[i] = 0.0;  // Nyquist zeroed on odd orders to keep the result real
      continue;
    }
    const std::complex<double> ik(0.0, kTwoPi * k);
    c[i] *= std::pow(ik, order);
  }
  return RealField::from_spectrum(u.grid(), c);
}

RealField apply_A(const RealField& u) {
  const int n = u.size();
  Eigen::ArrayXcd c = u.spectrum();
  for (int i = 1; i < n; ++i) {
    const double k = detail::wavenumber(i, n);
    c[i] *= (kTwoPi * k) * (kTwoPi * k);
  }
  return RealField::from_spectrum(u.grid(), c);
}

namespace detail {

RealField zero_mean_antiderivative(const RealField& w) {
  const int n = w.size();
  Eigen::ArrayXcd c = w.spectrum();
  c[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    const int k = detail::wavenumber(i, n);
    c[i] /= std::complex<double>(0.0, kTwoPi * k);
  }
  return RealField::from_spectrum(w.grid(), c);
}

}  // namespace detail

namespace {

RealField ainv_spectral(const RealField& w) {
  const int n = w.size();
  Eigen::ArrayXcd c = w.spectrum();
  for (int i = 1; i < n; ++i) {
    const double k = detail::wavenumber(i, n);
    c[i] /= (kTwoPi * k) * (kTwoPi * k);
  }
  return RealField::from_spectrum(w.grid(), c);
}

// Triple-antiderivative closed form.  Repeated antiderivatives of w split
// into a periodic part (spectrally exact) and polynomial-in-x pieces carried
// analytically:
//   W1(x) = int_0^x w        = mu(w) x + P1(x) - P1(0)
//   W2(x) = int_0^x W1       = mu(w) x^2/2 + Q(x) - Q(0) - P1(0) x
// with P1 the zero-mean antiderivative of w - mu(w) and Q the zero-mean
// antiderivative of P1.  Circle averages use int_0^1 x = 1/2 and
// int_0^1 x^2/2 = 1/6.
RealField ainv_quadrature(const RealField& w) {
  const PeriodicGrid g = w.grid();
  const double mu_w = mean(w);
  const RealField p1 = detail::zero_mean_antiderivative(w);
  const RealField q = detail::zero_mean_antiderivative(p1);
  const double p1_0 = p1[0];
  const double q_0 = q[0];
  const Eigen::ArrayXd x = g.nodes();

  const double mean_w1 = mu_w / 2.0 - p1_0;
  const double mean_w2 = mu_w / 6.0 - q_0 - p1_0 / 2.0;
  const Eigen::ArrayXd w2 =
      mu_w * x.square() / 2.0 + (q.samples() - q_0) - p1_0 * x;

  Eigen::ArrayXd out = (x.square() / 2.0 - x / 2.0 + 13.0 / 12.0) * mu_w +
                       (x - 0.5) * mean_w1 - w2 + mean_w2;
  return RealField(g, std::move(out));
}

}  // namespace

RealField apply_A_inverse(const RealField& w, InverseMethod method) {
  return method == InverseMethod::Spectral ? ainv_spectral(w)
                                           : ainv_quadrature(w);
}

RealField ainv_dx(const RealField& w) {
  const PeriodicGrid g = w.grid();
  const double mu_w = mean(w);
  const RealField p1 = detail::zero_mean_antiderivative(w);
  const Eigen::ArrayXd x = g.nodes();
  // int_0^x w and its circle average, assembled as in the closed identity.
  const Eigen::ArrayXd w1 = mu_w * x + (p1.samples() - p1[0]);
  const double mean_w1 = mu_w / 2.0 - p1[0];
  Eigen::ArrayXd out = (x - 0.5) * mu_w - w1 + mean_w1;
  return RealField(g, std::move(out));
}

RealField dealias(const RealField& u) {
  const int n = u.size();
  Eigen::ArrayXcd c = u.spectrum();
  const double cutoff = n / 3.0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(detail::wavenumber(i, n)) > cutoff) c[i] = 0.0;
  }
  return RealField::from_spectrum(u.grid(), c);
}

double interpolate(const RealField& u, double x) {
  Eigen::ArrayXd xs(1);
  xs[0] = x;
  return interpolate_many(u, xs)[0];
}

Eigen::ArrayXd interpolate_many(const RealField& u, const Eigen::ArrayXd& xs) {
  const int n = u.size();
  const Eigen::ArrayXcd& c = u.spectrum();
  Eigen::ArrayXd out = Eigen::ArrayXd::Constant(xs.size(), c[0].real());
  for (int k = 1; k < n / 2; ++k) {
    const double re = c[k].real(), im = c[k].imag();
    const Eigen::ArrayXd arg = kTwoPi * k * xs;
    out += 2.0 * (re * arg.cos() - im * arg.sin());
  }
  // Nyquist contributes as a pure cosine so the interpolant stays real.
  out += c[n / 2].real() * (kTwoPi * (n / 2) * xs).cos();
  return out;
}

double l2_norm(const RealField& u) {
  return std::sqrt(u.grid().h * u.samples().square().sum());
}

double l1_norm(const RealField& u) {
  return u.grid().h * u.samples().abs().sum();
}

double max_abs(const RealField& u) { return u.samples().abs().maxCoeff(); }

double spectral_energy(const RealField& u) {
  return u.spectrum().abs2().sum();
}

}  // namespace muhs
