#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "burgers/field.hpp"

namespace burgers {

/// What to record at each sample. Every entry is optional; an empty probe
/// set records only the time stamp.
struct ProbeSet {
  std::vector<int> sobolev_orders;   // squared H^m norms; m < 0 allowed as diagnostic
  bool oleinik = false;              // (|u|_inf, |u_x|_1, max u_x^+)
  bool spectrum = false;             // modal energies 1/2 |u_n|^2, n = 1..K
  std::vector<double> structure_p;   // moments of increments ...
  std::vector<double> structure_l;   // ... at these spatial increments
  std::size_t low_modes = 0;         // u_1..u_n as complex amplitudes
  bool norms = false;                // |u|_{L1} and |u|_{L2}^2
  bool grid = false;                 // full grid snapshot

  static std::vector<std::string> names() {
    return {"sobolev", "oleinik", "spectrum", "structure", "modes", "norms", "grid"};
  }
};

struct Sample {
  double t = 0.0;
  std::uint64_t step = 0;
  std::vector<double> sobolev;     // aligned with ProbeSet::sobolev_orders
  std::optional<OleinikObservables> oleinik;
  std::vector<double> spectrum;    // index n-1 holds 1/2 |u_n|^2
  std::vector<double> structure;   // row-major [p][l]
  std::vector<Complex> low_modes;
  double l1 = 0.0;
  double l2_sq = 0.0;
  std::vector<double> grid;
  /// |u - u_ref|_{L1} against the first trajectory of a coupled group;
  /// NaN outside coupled runs.
  double pair_l1 = std::numeric_limits<double>::quiet_NaN();
};

enum class Scheme : std::uint32_t { viscous = 1, linearized = 2, inviscid = 3 };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

/// Time-stamped observables of one noise realisation.
struct TrajectoryStream {
  Scheme scheme = Scheme::viscous;
  double nu = 0.0;
  std::size_t grid_points = 0;
  std::uint64_t seed = 0;
  std::uint32_t member_id = 0;
  ProbeSet probes;
  std::vector<Sample> samples;
  std::uint64_t steps_taken = 0;
};

/// Time-stepping controls.
///
/// dt <= dt_max and dt <= cfl * dx / |u|_inf at every step. Samples are
/// recorded every observable_stride steps (0 disables), and additionally at
/// every multiple of sample_interval (0 disables), which the stepper lands on
/// exactly by shortening the step. The initial state is always recorded.
struct StepSchedule {
  double dt_max = 1e-3;
  double cfl = 0.4;
  double t_end = 1.0;
  std::size_t observable_stride = 0;
  double sample_interval = 0.0;
};

/// Evaluates every requested probe on a spectral state carried by an N-point
/// grid.
Sample observe(const SpectralField& u, std::size_t grid_points, const ProbeSet& probes,
               double t, std::uint64_t step);

/// Same, for a grid field (finite-volume cell averages).
Sample observe(const GridField& g, const ProbeSet& probes, double t, std::uint64_t step);

/// |a - b|_{L1} by the trapezoid rule.
double l1_distance(std::span<const double> a, std::span<const double> b);

}  // namespace burgers
