#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "burgers/harness/config.hpp"
#include "burgers/integrator.hpp"
#include "burgers/inviscid.hpp"

namespace burgers::harness {

/// Worker count from BURGERS_WORKERS, else the hardware concurrency.
std::size_t worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads. Tasks share nothing; the
/// exception of the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Stream tags separating noise paths and random initial data of the
/// different ensembles drawn from one seed.
enum class Stream : std::uint32_t { ensemble_a = 0, ensemble_b = 1 << 20, partner = 2 << 20,
                                    inviscid = 3 << 20, gap = 4 << 20 };

inline std::uint32_t member_id(Stream s, std::size_t i) {
  return static_cast<std::uint32_t>(s) + static_cast<std::uint32_t>(i);
}

/// Random low-mode initial datum: u_k = amplitude (g_k + i g'_k) / k for
/// 1 <= k <= 4 with independent standard normals keyed by (seed, id).
SpectralField random_initial(std::uint64_t seed, std::uint32_t id, std::size_t truncation,
                             double amplitude);

/// sin(2 pi x) as a spectral field.
SpectralField sine_initial(std::size_t truncation, double amplitude = 1.0);

/// Probes recorded on ensemble members.
ProbeSet ensemble_probes(const ExperimentConfig& cfg, std::size_t grid_points);

/// Stationary-regime ensemble at one viscosity.
///
/// Members of A start from random data and, when nu is a mixing viscosity,
/// each is coupled to a partner started from independent random data under
/// the same noise. Members of B start from rest with their own noise. A and
/// B together form the bracket ensemble.
struct ViscousEnsemble {
  double nu = 0.0;
  std::size_t grid_points = 0;
  std::vector<TrajectoryStream> a;
  std::vector<TrajectoryStream> partners;  // empty unless coupled
  std::vector<TrajectoryStream> b;

  std::vector<TrajectoryStream> bracket_members() const;
};

/// Runs each ensemble once per process and hands out shared results.
class EnsembleCache {
 public:
  explicit EnsembleCache(ExperimentConfig cfg);

  const ExperimentConfig& config() const noexcept { return cfg_; }

  /// Runs every not-yet-cached ensemble for the given viscosities in one
  /// pool, then returns them in order.
  std::vector<std::shared_ptr<const ViscousEnsemble>> viscous(const std::vector<double>& nus);
  std::shared_ptr<const ViscousEnsemble> viscous(double nu) { return viscous(std::vector{nu}).front(); }

  /// Entropy-solution ensemble on cfg.inviscid_cells cells.
  std::shared_ptr<const std::vector<TrajectoryStream>> inviscid();

 private:
  ExperimentConfig cfg_;
  std::mutex mutex_;
  std::map<double, std::shared_ptr<const ViscousEnsemble>> viscous_;
  std::shared_ptr<const std::vector<TrajectoryStream>> inviscid_;
};

}  // namespace burgers::harness
