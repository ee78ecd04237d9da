#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "burgers/trajectory.hpp"

namespace burgers {

/// Resumable solver state.
///
/// Binary layout, version 1, all fields little-endian:
///
///   offset  size  field
///        0     4  magic "SBRG"
///        4     4  u32 format version (= 1)
///        8     4  u32 scheme tag (1 viscous, 2 linearized, 3 inviscid)
///       12     4  u32 grid points N
///       16     4  u32 payload length L (modes K for spectral, cells N for inviscid)
///       20     4  u32 ensemble member id
///       24     8  u64 noise seed
///       32     8  u64 step index (the noise counter of the next step)
///       40     8  f64 time t
///       48     8  f64 viscosity nu (0 for inviscid)
///       56   8*P  f64 payload: spectral schemes store interleaved (re, im)
///                 of modes k = 1..K (P = 2K); inviscid stores the N cell
///                 averages (P = N)
///   56+8P     8  u64 FNV-1a hash of all preceding bytes
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  Scheme scheme = Scheme::viscous;
  std::uint32_t grid_points = 0;
  std::uint32_t member_id = 0;
  std::uint64_t seed = 0;
  std::uint64_t step_index = 0;
  double t = 0.0;
  double nu = 0.0;
  std::vector<double> payload;

  bool operator==(const Checkpoint&) const = default;
};

void write_checkpoint(std::ostream& os, const Checkpoint& c);
Checkpoint read_checkpoint(std::istream& is);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace burgers
