#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "burgers/field.hpp"

namespace burgers {

/// Coefficients of the Wiener forcing
///   xi(t, x) = sum_s b_s beta_s(t) e_s(x),
/// e_k = sqrt2 cos(2 pi k x), e_{-k} = sqrt2 sin(2 pi k x), k >= 1,
/// together with the coordinates of its noise stream.
struct ForcingSpec {
  std::map<int, double> coefficients;  // s -> b_s, s != 0
  std::uint64_t seed = 0;
  std::uint32_t member_id = 0;

  /// b_s = |s|^{-1} on 1 <= |s| <= s_max, scaled so that B_0 = b0.
  static ForcingSpec inverse_s_bandlimited(int s_max, double b0);

  /// Parses "inverse_s_bandlimited(S_max, B0)" or
  /// "explicit(s:b_s, s:b_s, ...)". Throws ConfigurationError.
  static ForcingSpec parse(const std::string& rule);

  /// Canonical rule string, round-trips through parse().
  std::string rule() const;

  double coefficient(int s) const noexcept;
  int max_wavenumber() const noexcept;

  /// Throws ConfigurationError unless 0 < B_0 < infinity and every s != 0.
  void validate() const;

  ForcingSpec for_member(std::uint32_t member) const {
    ForcingSpec copy = *this;
    copy.member_id = member;
    return copy;
  }
};

/// B_m = sum_s (2 pi |s|)^{2m} b_s^2.
double b_constant(const ForcingSpec& spec, int m);

/// Forcing increment over one step, sum_s b_s dbeta_s e_s, as complex modes.
struct NoiseIncrement {
  double dt = 0.0;
  SpectralField delta{1};
};

/// Increment over [t_n, t_n + dt] for step n. Bit-identical for identical
/// (seed, member_id, step_index, dt).
NoiseIncrement sample_increment(const ForcingSpec& spec, double dt, std::uint64_t step_index);

/// Sum of `count` consecutive fine increments of size fine_dt starting at
/// fine step `first`: the coarse increment of the same Brownian path.
NoiseIncrement path_increment(const ForcingSpec& spec, double fine_dt, std::uint64_t first,
                              std::uint64_t count);

}  // namespace burgers
