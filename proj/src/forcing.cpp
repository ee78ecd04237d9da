#include "burgers/forcing.hpp"

#include <cmath>
#include <cstdlib>
#include <regex>
#include <sstream>

#include "burgers/errors.hpp"
#include "burgers/rng.hpp"

namespace burgers {

ForcingSpec ForcingSpec::inverse_s_bandlimited(int s_max, double b0) {
  if (s_max < 1) throw ConfigurationError("inverse_s_bandlimited needs S_max >= 1");
  if (!(b0 > 0.0) || !std::isfinite(b0))
    throw ConfigurationError("inverse_s_bandlimited needs 0 < B0 < inf");
  double sum = 0.0;
  for (int s = 1; s <= s_max; ++s) sum += 2.0 / (static_cast<double>(s) * s);
  const double scale = std::sqrt(b0 / sum);
  ForcingSpec spec;
  for (int s = 1; s <= s_max; ++s) {
    spec.coefficients[s] = scale / s;
    spec.coefficients[-s] = scale / s;
  }
  return spec;
}

ForcingSpec ForcingSpec::parse(const std::string& rule) {
  static const std::regex inverse_re(
      R"(\s*inverse_s_bandlimited\(\s*([0-9]+)\s*,\s*([-+0-9.eE]+)\s*\)\s*)");
  static const std::regex explicit_re(R"(\s*explicit\((.*)\)\s*)");
  std::smatch m;
  if (std::regex_match(rule, m, inverse_re)) {
    char* end = nullptr;
    const double b0 = std::strtod(m[2].str().c_str(), &end);
    if (*end != '\0') throw ConfigurationError("bad B0 in forcing rule: " + rule);
    return inverse_s_bandlimited(std::stoi(m[1].str()), b0);
  }
  if (std::regex_match(rule, m, explicit_re)) {
    ForcingSpec spec;
    static const std::regex pair_re(R"(\s*([-+]?[0-9]+)\s*:\s*([-+0-9.eE]+)\s*)");
    std::stringstream ss(m[1].str());
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::smatch pm;
      if (!std::regex_match(item, pm, pair_re))
        throw ConfigurationError("bad coefficient '" + item + "' in forcing rule");
      const int s = std::stoi(pm[1].str());
      if (s == 0) throw ConfigurationError("forcing coefficient b_0 is not allowed");
      char* end = nullptr;
      const double b = std::strtod(pm[2].str().c_str(), &end);
      if (*end != '\0') throw ConfigurationError("bad coefficient value '" + item + "'");
      spec.coefficients[s] = b;
    }
    return spec;
  }
  throw ConfigurationError("unknown forcing rule: " + rule);
}

std::string ForcingSpec::rule() const {
  std::ostringstream os;
  os.precision(17);
  os << "explicit(";
  bool first = true;
  for (const auto& [s, b] : coefficients) {
    if (!first) os << ", ";
    os << s << ':' << b;
    first = false;
  }
  os << ')';
  return os.str();
}

double ForcingSpec::coefficient(int s) const noexcept {
  auto it = coefficients.find(s);
  return it == coefficients.end() ? 0.0 : it->second;
}

int ForcingSpec::max_wavenumber() const noexcept {
  int k = 0;
  for (const auto& [s, b] : coefficients)
    if (b != 0.0) k = std::max(k, std::abs(s));
  return k;
}

void ForcingSpec::validate() const {
  for (const auto& [s, b] : coefficients) {
    if (s == 0) throw ConfigurationError("forcing coefficient b_0 is not allowed");
    if (!std::isfinite(b)) throw ConfigurationError("non-finite forcing coefficient");
  }
  const double b0 = b_constant(*this, 0);
  if (!(b0 > 0.0) || !std::isfinite(b0))
    throw ConfigurationError("forcing needs 0 < B_0 < inf");
}

double b_constant(const ForcingSpec& spec, int m) {
  double sum = 0.0;
  for (const auto& [s, b] : spec.coefficients)
    sum += std::pow(kTwoPi * std::abs(s), 2 * m) * b * b;
  return sum;
}

namespace {

// dbeta_s over [t_n, t_n + dt] is sqrt(dt) * Z(seed, member, s, n).
double unit_normal(const ForcingSpec& spec, int s, std::uint64_t step) {
  return standard_normal({spec.seed, spec.member_id, s, step});
}

NoiseIncrement assemble(const ForcingSpec& spec, double dt, std::uint64_t first,
                        std::uint64_t count, double scale) {
  const int k_max = std::max(1, spec.max_wavenumber());
  NoiseIncrement inc;
  inc.dt = dt;
  inc.delta = SpectralField(static_cast<std::size_t>(k_max));
  auto modes = inc.delta.positive_modes();
  const double half_root2 = std::sqrt(0.5);
  for (int k = 1; k <= k_max; ++k) {
    const double b_cos = spec.coefficient(k);
    const double b_sin = spec.coefficient(-k);
    double w_cos = 0.0;
    double w_sin = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
      if (b_cos != 0.0) w_cos += unit_normal(spec, k, first + i);
      if (b_sin != 0.0) w_sin += unit_normal(spec, -k, first + i);
    }
    // sqrt2 cos = (e^{+} + e^{-})/sqrt2, sqrt2 sin = (e^{+} - e^{-})/(i sqrt2).
    modes[k - 1] = half_root2 * scale * Complex(b_cos * w_cos, -b_sin * w_sin);
  }
  return inc;
}

}  // namespace

NoiseIncrement sample_increment(const ForcingSpec& spec, double dt, std::uint64_t step_index) {
  if (!(dt > 0.0)) throw DomainError("noise increment needs dt > 0");
  return assemble(spec, dt, step_index, 1, std::sqrt(dt));
}

NoiseIncrement path_increment(const ForcingSpec& spec, double fine_dt, std::uint64_t first,
                              std::uint64_t count) {
  if (!(fine_dt > 0.0) || count == 0) throw DomainError("path increment needs fine_dt > 0");
  return assemble(spec, fine_dt * static_cast<double>(count), first, count, std::sqrt(fine_dt));
}

}  // namespace burgers
