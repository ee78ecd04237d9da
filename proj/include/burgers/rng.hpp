#pragma once

#include <array>
#include <cstdint>

namespace burgers {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A pure function of (counter, key): no state is carried between calls, so
/// any draw can be regenerated from its coordinates alone.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// Coordinates of one standard normal draw in the forcing noise stream.
struct NoiseCoordinates {
  std::uint64_t seed = 0;
  std::uint32_t member_id = 0;
  std::int32_t wavenumber = 0;  // signed basis index s
  std::uint64_t step_index = 0;
};

/// Standard normal keyed by its coordinates (Box-Muller on two 53-bit
/// uniforms taken from one Philox block).
double standard_normal(const NoiseCoordinates& at) noexcept;

/// Uniform on (0, 1] from the same block layout; used for test generators.
double uniform_open_closed(const NoiseCoordinates& at) noexcept;

}  // namespace burgers
