#include "muhs/field.hpp"

#include <unsupported/Eigen/FFT>
#include <vector>

namespace muhs {

namespace detail {

void require_same_grid(const RealField& a, const RealField& b) {
  if (a.grid() != b.grid()) {
    throw InvalidInput("fields live on different grids (" +
                       std::to_string(a.grid().n) + " vs " +
                       std::to_string(b.grid().n) + ")");
  }
}

namespace {
Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}
}  // namespace

Eigen::ArrayXcd forward_fft(const Eigen::ArrayXd& x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> in(n), out(n);
  for (int j = 0; j < n; ++j) in[j] = x[j];
  fft_engine().fwd(out, in);
  Eigen::ArrayXcd c(n);
  for (int j = 0; j < n; ++j) c[j] = out[j] / static_cast<double>(n);
  return c;
}

Eigen::ArrayXd inverse_fft(const Eigen::ArrayXcd& c) {
  const int n = static_cast<int>(c.size());
  std::vector<std::complex<double>> in(n), out(n);
  for (int j = 0; j < n; ++j) in[j] = c[j] * static_cast<double>(n);
  fft_engine().inv(out, in);
  Eigen::ArrayXd x(n);
  for (int j = 0; j < n; ++j) x[j] = out[j].real();
  return x;
}

}  // namespace detail

RealField::RealField(PeriodicGrid grid, Eigen::ArrayXd samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid_.n) {
    throw InvalidInput("RealField: sample count " +
                       std::to_string(samples_.size()) +
                       " does not match grid size " + std::to_string(grid_.n));
  }
}

RealField RealField::zero(PeriodicGrid grid) {
  return RealField(grid, Eigen::ArrayXd::Zero(grid.n));
}

RealField RealField::constant(PeriodicGrid grid, double value) {
  return RealField(grid, Eigen::ArrayXd::Constant(grid.n, value));
}

RealField RealField::from_function(PeriodicGrid grid,
                                   const std::function<double(double)>& f) {
  Eigen::ArrayXd s(grid.n);
  for (int j = 0; j < grid.n; ++j) s[j] = f(grid.node(j));
  return RealField(grid, std::move(s));
}

RealField RealField::from_spectrum(PeriodicGrid grid,
                                   const Eigen::ArrayXcd& coeffs) {
  if (static_cast<int>(coeffs.size()) != grid.n) {
    throw InvalidInput("RealField::from_spectrum: coefficient count mismatch");
  }
  RealField out(grid, detail::inverse_fft(coeffs));
  out.spectrum_ = coeffs;
  return out;
}

const Eigen::ArrayXcd& RealField::spectrum() const {
  if (!spectrum_) spectrum_ = detail::forward_fft(samples_);
  return *spectrum_;
}

RealField operator+(const RealField& a, const RealField& b) {
  detail::require_same_grid(a, b);
  return RealField(a.grid(), a.samples() + b.samples());
}

RealField operator-(const RealField& a, const RealField& b) {
  detail::require_same_grid(a, b);
  return RealField(a.grid(), a.samples() - b.samples());
}

RealField operator*(const RealField& a, const RealField& b) {
  detail::require_same_grid(a, b);
  return RealField(a.grid(), a.samples() * b.samples());
}

RealField operator*(double s, const RealField& a) {
  return RealField(a.grid(), s * a.samples());
}

RealField operator*(const RealField& a, double s) { return s * a; }

RealField operator+(const RealField& a, double s) {
  return RealField(a.grid(), a.samples() + s);
}

RealField operator+(double s, const RealField& a) { return a + s; }

RealField operator-(const RealField& a, double s) { return a + (-s); }

RealField operator-(const RealField& a) {
  return RealField(a.grid(), -a.samples());
}

}  // namespace muhs
