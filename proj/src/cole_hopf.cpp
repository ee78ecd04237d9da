#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/integrator.hpp"

namespace burgers {

GridField cole_hopf_reference(double amplitude, double nu, double t, std::size_t n) {
  if (!(nu > 0.0)) throw DomainError("Cole-Hopf reference needs nu > 0");
  if (t < 0.0) throw DomainError("Cole-Hopf reference needs t >= 0");
  if (!is_power_of_two(n) || n < 4) throw ConfigurationError("grid size must be a power of two");

  // phi(0, x) = exp(-a (1 - cos 2 pi x)) = e^{-a} sum_k I_k(a) e^{2 pi i k x}.
  const double a = amplitude / (2.0 * kTwoPi * nu);
  const double abs_a = std::abs(a);
  if (abs_a > 300.0)
    throw ResolutionError("Cole-Hopf reference: nu too small for the amplitude");

  std::vector<double> coeff;  // real cosine coefficients of phi(t)
  const double heat = nu * kTwoPi * kTwoPi * t;
  for (std::size_t k = 0;; ++k) {
    double c = (abs_a == 0.0) ? (k == 0 ? 1.0 : 0.0)
                              : std::exp(-a) * std::cyl_bessel_i(static_cast<double>(k), abs_a);
    if (a < 0.0 && k % 2 == 1) c = -c;
    c *= std::exp(-heat * static_cast<double>(k * k));
    coeff.push_back(c);
    if (k > abs_a && std::abs(c) < 1e-18 * std::abs(coeff[0])) break;
    if (k >= n / 2)
      throw ResolutionError("Cole-Hopf reference: phi is not resolved on " + std::to_string(n) +
                            " points");
  }

  std::vector<double> u(n);
  double phi_min = INFINITY;
  double phi_max = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double phi = coeff[0];
    double phi_x = 0.0;
    for (std::size_t k = 1; k < coeff.size(); ++k) {
      const double arg = kTwoPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      phi += 2.0 * coeff[k] * std::cos(arg);
      phi_x -= 2.0 * coeff[k] * kTwoPi * static_cast<double>(k) * std::sin(arg);
    }
    phi_min = std::min(phi_min, phi);
    phi_max = std::max(phi_max, phi);
    u[j] = -2.0 * nu * phi_x / phi;
  }
  if (!(phi_min > 1e-10 * phi_max))
    throw ResolutionError("Cole-Hopf reference: phi spans too many decades for double precision");

  const double mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(n);
  for (double& v : u) v -= mean;
  return GridField(std::move(u));
}

}  // namespace burgers
