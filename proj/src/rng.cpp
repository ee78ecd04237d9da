#include "burgers/rng.hpp"

#include <cmath>

namespace burgers {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

Philox4x32::Counter block_for(const NoiseCoordinates& at) noexcept {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(at.step_index),
                                static_cast<std::uint32_t>(at.step_index >> 32),
                                static_cast<std::uint32_t>(at.wavenumber), at.member_id};
  const Philox4x32::Key key{static_cast<std::uint32_t>(at.seed),
                            static_cast<std::uint32_t>(at.seed >> 32)};
  return Philox4x32::generate(ctr, key);
}

// 53-bit uniform on (0, 1].
inline double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double standard_normal(const NoiseCoordinates& at) noexcept {
  const auto b = block_for(at);
  const double u1 = to_unit(b[0], b[1]);
  const double u2 = to_unit(b[2], b[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
}

double uniform_open_closed(const NoiseCoordinates& at) noexcept {
  const auto b = block_for(at);
  return to_unit(b[0], b[1]);
}

}  // namespace burgers
