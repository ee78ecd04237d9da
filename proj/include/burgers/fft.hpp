#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace burgers {

struct FftPlans;

/// Real-to-complex transform workspace of fixed size n (power of two).
///
/// Plans are shared process-wide and created once per size under a lock;
/// buffers are owned per workspace, so one workspace must not be used from
/// two threads at once. Plans use FFTW_ESTIMATE, which makes the selected
/// algorithm (and therefore every rounding) identical run to run.
///
/// Normalisation: forward() computes c_k = (1/n) sum_j x_j e^{-2 pi i k j/n},
/// inverse() computes x_j = sum_k c_k e^{2 pi i k j/n} over the full
/// Hermitian spectrum. inverse() clobbers the spectrum buffer.
class FftWorkspace {
 public:
  explicit FftWorkspace(std::size_t n);
  ~FftWorkspace();
  FftWorkspace(FftWorkspace&&) noexcept;
  FftWorkspace& operator=(FftWorkspace&&) noexcept;
  FftWorkspace(const FftWorkspace&) = delete;
  FftWorkspace& operator=(const FftWorkspace&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::span<double> real() noexcept { return {real_, n_}; }
  std::span<const double> real() const noexcept { return {real_, n_}; }
  std::span<std::complex<double>> spectrum() noexcept { return {spec_, n_ / 2 + 1}; }
  std::span<const std::complex<double>> spectrum() const noexcept {
    return {spec_, n_ / 2 + 1};
  }

  void forward();
  void inverse();

 private:
  std::size_t n_ = 0;
  std::shared_ptr<const FftPlans> plans_;
  double* real_ = nullptr;
  std::complex<double>* spec_ = nullptr;
};

/// Per-thread workspace cache for one-off transforms outside the stepper.
FftWorkspace& thread_workspace(std::size_t n);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace burgers
