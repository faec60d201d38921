#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>

#include "muhs/errors.hpp"

namespace muhs {

/// Centralized tolerances for structural identities.
inline constexpr double kEpsOperator = 1e-10;   // operator identities
inline constexpr double kEpsTransform = 1e-12;  // transform round-trips

/// Uniform grid on the unit circle R/Z: nodes x_j = j/n, spacing h = 1/n.
/// All wavenumbers downstream are 2*pi*k for integer k.
struct PeriodicGrid {
  int n = 0;
  double h = 0.0;

  PeriodicGrid() = default;
  explicit PeriodicGrid(int n_) : n(n_), h(1.0 / n_) {
    if (n_ < 8 || n_ % 2 != 0) {
      throw InvalidInput("PeriodicGrid: n must be even and >= 8, got " +
                         std::to_string(n_));
    }
  }

  double node(int j) const { return h * j; }
  Eigen::ArrayXd nodes() const {
    return Eigen::ArrayXd::LinSpaced(n, 0.0, (n - 1.0) / n);
  }
  bool operator==(const PeriodicGrid& o) const { return n == o.n; }
  bool operator!=(const PeriodicGrid& o) const { return n != o.n; }
};

/// Real periodic function sampled at the grid nodes, with Fourier
/// coefficients computed on demand.
///
/// Spectrum convention: coeffs()[i] = u_hat_k with k = i for i <= n/2 and
/// k = i - n otherwise (FFT wrap ordering), normalized so coeffs()[0] is the
/// mean. Hermitian symmetry u_hat_{-k} = conj(u_hat_k) holds for data built
/// from real samples.
///
/// Values are immutable after construction; copies are independent. The lazy
/// spectrum cache makes a *shared* instance unsafe for concurrent first use,
/// so transfer or copy fields between threads instead of sharing them.
class RealField {
 public:
  RealField() = default;
  RealField(PeriodicGrid grid, Eigen::ArrayXd samples);

  static RealField zero(PeriodicGrid grid);
  static RealField constant(PeriodicGrid grid, double value);
  static RealField from_function(PeriodicGrid grid,
                                 const std::function<double(double)>& f);
  /// Build from full-length wrap-ordered coefficients (see class docs).
  static RealField from_spectrum(PeriodicGrid grid,
                                 const Eigen::ArrayXcd& coeffs);

  const PeriodicGrid& grid() const { return grid_; }
  int size() const { return grid_.n; }
  const Eigen::ArrayXd& samples() const { return samples_; }
  const Eigen::ArrayXcd& spectrum() const;

  double operator[](int j) const { return samples_[j]; }

 private:
  PeriodicGrid grid_;
  Eigen::ArrayXd samples_;
  mutable std::optional<Eigen::ArrayXcd> spectrum_;
};

namespace detail {
void require_same_grid(const RealField& a, const RealField& b);
/// Normalized forward transform: c_k = (1/n) sum_j x_j exp(-2 pi i k x_j).
Eigen::ArrayXcd forward_fft(const Eigen::ArrayXd& x);
/// Real part of sum_k c_k exp(+2 pi i k x_j).
Eigen::ArrayXd inverse_fft(const Eigen::ArrayXcd& c);
/// Integer wavenumber for wrap index i on an n-grid.
inline int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }
}  // namespace detail

// Pointwise arithmetic. Results drop any cached spectrum.
RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);
RealField operator*(const RealField& a, double s);
RealField operator+(const RealField& a, double s);
RealField operator+(double s, const RealField& a);
RealField operator-(const RealField& a, double s);
RealField operator-(const RealField& a);

}  // namespace muhs
