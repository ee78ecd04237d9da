#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace burgers {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Fourier coefficients of a real, zero-mean, 1-periodic function,
///   u(x) = sum_{0 < |k| <= K} u_k e^{2 pi i k x}.
///
/// Only k = 1..K are stored; negative wavenumbers are conjugates, so Hermitian
/// symmetry holds by construction and the mean mode does not exist.
class SpectralField {
 public:
  explicit SpectralField(std::size_t truncation = 1);
  explicit SpectralField(std::vector<Complex> positive_modes);

  std::size_t truncation() const noexcept { return modes_.size(); }

  /// Coefficient of wavenumber k for any integer k. Zero for k == 0 and for
  /// |k| beyond the truncation.
  Complex at(long k) const noexcept;

  /// Modes 1..K; element i holds wavenumber i + 1.
  std::span<const Complex> positive_modes() const noexcept { return modes_; }
  std::span<Complex> positive_modes() noexcept { return modes_; }

  /// Copy truncated or zero-padded to a new K.
  SpectralField resized(std::size_t truncation) const;

  SpectralField& operator*=(double c) noexcept;
  SpectralField& operator+=(const SpectralField& other);
  friend SpectralField operator*(double c, SpectralField s) { return s *= c; }

  bool operator==(const SpectralField&) const = default;

 private:
  std::vector<Complex> modes_;
};

/// Samples u(x_j) at x_j = j/N, N a power of two >= 4, mean zero.
class GridField {
 public:
  GridField() = default;
  explicit GridField(std::vector<double> values);

  /// Samples f on the grid and subtracts the discrete mean (the sample mean of
  /// a zero-mean function is zero only up to round-off).
  static GridField sample(std::size_t n, const std::function<double(double)>& f);

  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept { return 1.0 / static_cast<double>(values_.size()); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }

 private:
  std::vector<double> values_;
};

struct OleinikObservables {
  double sup_norm = 0.0;       // |u|_{L_inf}
  double grad_l1 = 0.0;        // |u_x|_{L_1}
  double grad_plus_sup = 0.0;  // max_x u_x^+
};

/// Forward transform; the result keeps K = N/2 - 1 (Nyquist dropped).
SpectralField to_spectral(const GridField& g);

/// Inverse transform onto N points; requires N >= 2(K + 1).
GridField to_grid(const SpectralField& s, std::size_t n);

enum class NegativeOrders { reject, allow_diagnostic };

/// sum_k (2 pi |k|)^{2m} |u_k|^2, the squared homogeneous H^m norm. Negative m
/// is a reported diagnostic only and must be requested explicitly.
double sobolev_norm_sq(const SpectralField& s, int m,
                       NegativeOrders negative = NegativeOrders::reject);

/// Spectral derivative, same truncation.
SpectralField derivative(const SpectralField& s);

OleinikObservables oleinik_observables(const GridField& g);

/// ((1/N) sum_j |u_j|^p)^{1/p}, trapezoid rule on the periodic grid.
double lp_norm(const GridField& g, double p);

/// (1/N) sum_j |u_{j+shift} - u_j|^p with periodic wrap.
double increment_moment(std::span<const double> values, double p, std::size_t shift);

/// Grid shift equal to the spatial increment l on an N-point grid; throws
/// AlignmentError unless l*N is an integer.
std::size_t grid_shift(double l, std::size_t n);

}  // namespace burgers
