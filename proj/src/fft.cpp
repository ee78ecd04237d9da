#include "burgers/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "burgers/errors.hpp"

namespace burgers {

struct FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  ~FftPlans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(inverse);
  }
};

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const FftPlans> plans_for(std::size_t n) {
  static std::map<std::size_t, std::shared_ptr<const FftPlans>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto plans = std::make_shared<FftPlans>();
  double* re = fftw_alloc_real(n);
  fftw_complex* sp = fftw_alloc_complex(n / 2 + 1);
  const int len = static_cast<int>(n);
  plans->forward = fftw_plan_dft_r2c_1d(len, re, sp, FFTW_ESTIMATE);
  plans->inverse = fftw_plan_dft_c2r_1d(len, sp, re, FFTW_ESTIMATE);
  fftw_free(re);
  fftw_free(sp);
  if (!plans->forward || !plans->inverse)
    throw ConfigurationError("FFTW failed to plan a transform of size " + std::to_string(n));
  cache.emplace(n, plans);
  return plans;
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

FftWorkspace::FftWorkspace(std::size_t n) : n_(n) {
  if (!is_power_of_two(n) || n < 4)
    throw ConfigurationError("transform size must be a power of two >= 4, got " +
                             std::to_string(n));
  plans_ = plans_for(n);
  real_ = fftw_alloc_real(n);
  spec_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n / 2 + 1));
  for (std::size_t i = 0; i < n; ++i) real_[i] = 0.0;
  for (std::size_t i = 0; i <= n / 2; ++i) spec_[i] = 0.0;
}

FftWorkspace::~FftWorkspace() {
  fftw_free(real_);
  fftw_free(spec_);
}

FftWorkspace::FftWorkspace(FftWorkspace&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      plans_(std::move(other.plans_)),
      real_(std::exchange(other.real_, nullptr)),
      spec_(std::exchange(other.spec_, nullptr)) {}

FftWorkspace& FftWorkspace::operator=(FftWorkspace&& other) noexcept {
  if (this != &other) {
    fftw_free(real_);
    fftw_free(spec_);
    n_ = std::exchange(other.n_, 0);
    plans_ = std::move(other.plans_);
    real_ = std::exchange(other.real_, nullptr);
    spec_ = std::exchange(other.spec_, nullptr);
  }
  return *this;
}

void FftWorkspace::forward() {
  fftw_execute_dft_r2c(plans_->forward, real_, reinterpret_cast<fftw_complex*>(spec_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k <= n_ / 2; ++k) spec_[k] *= scale;
}

void FftWorkspace::inverse() {
  fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex*>(spec_), real_);
}

FftWorkspace& thread_workspace(std::size_t n) {
  thread_local std::map<std::size_t, FftWorkspace> workspaces;
  auto it = workspaces.find(n);
  if (it == workspaces.end()) it = workspaces.emplace(n, FftWorkspace(n)).first;
  return it->second;
}

}  // namespace burgers
