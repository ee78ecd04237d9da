#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "burgers/stats.hpp"
#include "burgers/trajectory.hpp"

namespace burgers::harness {

/// Every knob of an experiment. Files use one `key = value` per line, `#`
/// comments and comma-separated lists; unknown keys are rejected. See
/// configs/desk.conf for the full schema with defaults.
struct ExperimentConfig {
  Scheme model = Scheme::viscous;
  std::vector<double> nu_list{1e-2, 3e-3, 1e-3};
  std::string forcing = "inverse_s_bandlimited(4,1)";
  std::uint64_t seed = 20240601;
  std::string out = "out";

  // resolution: N = next power of two >= resolution_factor / nu
  double resolution_factor = 8.0;
  std::size_t max_grid_points = 8192;

  double dt_max = 1e-3;
  double cfl = 0.8;
  double sample_interval = 0.1;

  BracketSpec bracket;
  std::vector<int> sobolev_orders{1, 2, 3};

  double layer_m = 2.0;
  double spectrum_k_lo = 4.0;
  double spectrum_k_hi_nu = 0.25;  // upper fit bound is spectrum_k_hi_nu / nu
  double spectrum_tolerance = 0.15;
  double breakpoint_slope = -4.0;

  std::vector<double> structure_p{0.5, 1.0, 2.0, 3.0};
  double inertial_l_lo_nu = 30.0;  // inertial window [inertial_l_lo_nu * nu, inertial_l_hi]
  double inertial_l_hi = 0.1;
  double dissipation_l_hi_nu = 1.0;  // dissipation window [1/N, dissipation_l_hi_nu * nu]

  std::vector<double> mixing_nu{1e-2, 1e-3};
  double mixing_t_end = 20.0;
  double mixing_t_stride = 1.0;
  double initial_amplitude = 0.3;

  std::size_t inviscid_cells = 8192;
  double inviscid_l_lo_cells = 8.0;  // inviscid window [inviscid_l_lo_cells / N, inertial_l_hi]
  std::vector<double> gap_nu{1e-2, 3e-3, 1e-3};
  double gap_t = 1.0;
  double gap_dt = 2e-5;

  // `simulate` subcommand
  std::string initial = "zero";  // zero | sine | random
  double t_end = 1.0;
  std::size_t grid_points = 0;  // 0: resolution rule

  /// Grid for nu under the resolution rule, or grid_points when set.
  std::size_t grid_for(double nu) const;

  /// Throws ConfigurationError on any inconsistency, including a nu whose
  /// resolved grid would exceed max_grid_points.
  void validate() const;

  nlohmann::json to_json() const;
};

ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<stream>");
ExperimentConfig load_config(const std::string& path);

/// Applies a single `key = value` assignment; used for files and overrides.
void assign(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// All recognised keys, in schema order.
std::vector<std::string> config_keys();

/// Writes every key with its current value in the file format.
void write_config(std::ostream& out, const ExperimentConfig& cfg);

}  // namespace burgers::harness
