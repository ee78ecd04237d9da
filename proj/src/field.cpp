#include "burgers/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "burgers/errors.hpp"
#include "burgers/fft.hpp"

namespace burgers {

SpectralField::SpectralField(std::size_t truncation) : modes_(truncation, Complex{}) {
  if (truncation < 1) throw ConfigurationError("spectral truncation K must be >= 1");
}

SpectralField::SpectralField(std::vector<Complex> positive_modes)
    : modes_(std::move(positive_modes)) {
  if (modes_.empty()) throw ConfigurationError("spectral truncation K must be >= 1");
}

Complex SpectralField::at(long k) const noexcept {
  if (k == 0) return {};
  const std::size_t a = static_cast<std::size_t>(k < 0 ? -k : k);
  if (a > modes_.size()) return {};
  const Complex c = modes_[a - 1];
  return k > 0 ? c : std::conj(c);
}

SpectralField SpectralField::resized(std::size_t truncation) const {
  SpectralField out(truncation);
  const std::size_t n = std::min(truncation, modes_.size());
  std::copy_n(modes_.begin(), n, out.modes_.begin());
  return out;
}

SpectralField& SpectralField::operator*=(double c) noexcept {
  for (auto& m : modes_) m *= c;
  return *this;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.truncation() > truncation()) modes_.resize(other.truncation(), Complex{});
  for (std::size_t i = 0; i < other.modes_.size(); ++i) modes_[i] += other.modes_[i];
  return *this;
}

GridField::GridField(std::vector<double> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (!is_power_of_two(n) || n < 4)
    throw ConfigurationError("grid size must be a power of two >= 4, got " + std::to_string(n));
  double sum = 0.0;
  double peak = 0.0;
  for (double v : values_) {
    sum += v;
    peak = std::max(peak, std::abs(v));
  }
  const double mean = sum / static_cast<double>(n);
  if (std::abs(mean) > 1e-12 * std::max(peak, 1e-300) && peak > 0.0)
    throw DomainError("grid field is not zero-mean (mean=" + std::to_string(mean) + ")");
}

GridField GridField::sample(std::size_t n, const std::function<double(double)>& f) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(static_cast<double>(j) / static_cast<double>(n));
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  for (auto& x : v) x -= mean;
  return GridField(std::move(v));
}

SpectralField to_spectral(const GridField& g) {
  const std::size_t n = g.size();
  if (!is_power_of_two(n) || n < 4)
    throw ConfigurationError("grid size must be a power of two >= 4");
  FftWorkspace& ws = thread_workspace(n);
  std::copy(g.values().begin(), g.values().end(), ws.real().begin());
  ws.forward();
  const std::size_t k_max = n / 2 - 1;
  std::vector<Complex> modes(ws.spectrum().begin() + 1, ws.spectrum().begin() + 1 + k_max);
  return SpectralField(std::move(modes));
}

GridField to_grid(const SpectralField& s, std::size_t n) {
  if (!is_power_of_two(n) || n < 4)
    throw ConfigurationError("grid size must be a power of two >= 4");
  if (n < 2 * (s.truncation() + 1))
    throw ResolutionError("grid of " + std::to_string(n) + " points cannot carry K=" +
                          std::to_string(s.truncation()));
  FftWorkspace& ws = thread_workspace(n);
  auto spec = ws.spectrum();
  std::fill(spec.begin(), spec.end(), Complex{});
  const auto modes = s.positive_modes();
  std::copy(modes.begin(), modes.end(), spec.begin() + 1);
  ws.inverse();
  std::vector<double> v(ws.real().begin(), ws.real().end());
  // c2r reads only the Hermitian half, so there is no imaginary residue to
  // discard; the mean is removed to absorb round-off.
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  for (auto& x : v) x -= mean;
  return GridField(std::move(v));
}

double sobolev_norm_sq(const SpectralField& s, int m, NegativeOrders negative) {
  if (m < 0 && negative == NegativeOrders::reject)
    throw DomainError("negative Sobolev order " + std::to_string(m) +
                      " is only available as a diagnostic");
  const auto modes = s.positive_modes();
  double sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double w = m == 0 ? 1.0 : std::pow(kTwoPi * static_cast<double>(i + 1), 2 * m);
    sum += w * std::norm(modes[i]);
  }
  return 2.0 * sum;
}

SpectralField derivative(const SpectralField& s) {
  SpectralField d = s;
  auto modes = d.positive_modes();
  for (std::size_t i = 0; i < modes.size(); ++i)
    modes[i] *= Complex(0.0, kTwoPi * static_cast<double>(i + 1));
  return d;
}

OleinikObservables oleinik_observables(const GridField& g) {
  const std::size_t n = g.size();
  const GridField ux = to_grid(derivative(to_spectral(g)), n);
  OleinikObservables o;
  double l1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    o.sup_norm = std::max(o.sup_norm, std::abs(g[j]));
    l1 += std::abs(ux[j]);
    o.grad_plus_sup = std::max(o.grad_plus_sup, ux[j]);
  }
  o.grad_l1 = l1 / static_cast<double>(n);
  return o;
}

double lp_norm(const GridField& g, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("L_p norm requires finite p > 0");
  double sum = 0.0;
  for (double v : g.values()) sum += std::pow(std::abs(v), p);
  return std::pow(sum / static_cast<double>(g.size()), 1.0 / p);
}

double increment_moment(std::span<const double> values, double p, std::size_t shift) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (!(p > 0.0)) throw DomainError("increment moment requires p > 0");
  shift %= n;
  auto sum_with = [&](auto&& power) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t jj = j + shift;
      if (jj >= n) jj -= n;
      sum += power(std::abs(values[jj] - values[j]));
    }
    return sum / static_cast<double>(n);
  };
  if (p == 1.0) return sum_with([](double d) { return d; });
  if (p == 2.0) return sum_with([](double d) { return d * d; });
  if (p == 3.0) return sum_with([](double d) { return d * d * d; });
  if (p == 0.5) return sum_with([](double d) { return std::sqrt(d); });
  return sum_with([p](double d) { return std::pow(d, p); });
}

std::size_t grid_shift(double l, std::size_t n) {
  const double cells = l * static_cast<double>(n);
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, std::abs(cells)))
    throw AlignmentError("increment l=" + std::to_string(l) + " is not a multiple of 1/" +
                         std::to_string(n));
  if (rounded < 0.0) throw AlignmentError("increment must be non-negative");
  return static_cast<std::size_t>(rounded);
}

}  // namespace burgers
