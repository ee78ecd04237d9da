#include "burgers/harness/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "burgers/errors.hpp"
#include "burgers/rng.hpp"

namespace burgers::harness {

namespace {

constexpr std::uint64_t kInitialDataSalt = 0x9e3779b97f4a7c15ULL;

std::vector<double> increment_grid(std::size_t n) {
  std::vector<double> l;
  const double dx = 1.0 / static_cast<double>(n);
  // Every multiple up to 8 dx resolves the dissipation range at the largest nu.
  for (std::size_t j = 1; j < 8; ++j) l.push_back(static_cast<double>(j) * dx);
  for (double x = 8 * dx; x <= 0.25 + 1e-12; x *= std::sqrt(2.0)) {
    const double q = std::round(x * static_cast<double>(n)) * dx;
    if (l.empty() || q > l.back()) l.push_back(q);
  }
  return l;
}

bool contains(const std::vector<double>& list, double x) {
  return std::any_of(list.begin(), list.end(),
                     [x](double y) { return std::abs(x - y) <= 1e-12 * std::abs(x); });
}

}  // namespace

std::size_t worker_count() {
  if (const char* env = std::getenv("BURGERS_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n < 1) throw ConfigurationError("BURGERS_WORKERS must be a positive integer");
    return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SpectralField random_initial(std::uint64_t seed, std::uint32_t id, std::size_t truncation,
                             double amplitude) {
  SpectralField u(truncation);
  for (std::int32_t k = 1; k <= 4 && static_cast<std::size_t>(k) <= truncation; ++k) {
    const double re = standard_normal({seed ^ kInitialDataSalt, id, k, 0});
    const double im = standard_normal({seed ^ kInitialDataSalt, id, -k, 0});
    u.positive_modes()[static_cast<std::size_t>(k) - 1] = amplitude * Complex(re, im) / double(k);
  }
  return u;
}

SpectralField sine_initial(std::size_t truncation, double amplitude) {
  SpectralField u(truncation);
  // sin(2 pi x) = (e^{2 pi i x} - e^{-2 pi i x}) / 2i
  u.positive_modes()[0] = Complex(0.0, -0.5 * amplitude);
  return u;
}

ProbeSet ensemble_probes(const ExperimentConfig& cfg, std::size_t grid_points) {
  ProbeSet p;
  p.sobolev_orders = cfg.sobolev_orders;
  p.spectrum = true;
  p.structure_p = cfg.structure_p;
  p.structure_l = increment_grid(grid_points);
  p.low_modes = 2;
  p.norms = true;
  return p;
}

std::vector<TrajectoryStream> ViscousEnsemble::bracket_members() const {
  std::vector<TrajectoryStream> all(a);
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

EnsembleCache::EnsembleCache(ExperimentConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

std::vector<std::shared_ptr<const ViscousEnsemble>> EnsembleCache::viscous(
    const std::vector<double>& nus) {
  std::lock_guard lock(mutex_);
  std::vector<double> missing;
  for (double nu : nus)
    if (!viscous_.count(nu) && !contains(missing, nu)) missing.push_back(nu);

  const std::size_t n_a = cfg_.bracket.ensemble_size / 2;
  const std::size_t n_b = cfg_.bracket.ensemble_size - n_a;
  const ForcingSpec forcing = [&] {
    ForcingSpec f = ForcingSpec::parse(cfg_.forcing);
    f.seed = cfg_.seed;
    return f;
  }();

  struct Task {
    std::size_t ensemble;
    bool in_a;
    std::size_t index;
  };
  std::vector<Task> tasks;
  std::vector<ViscousEnsemble> built(missing.size());
  for (std::size_t e = 0; e < missing.size(); ++e) {
    built[e].nu = missing[e];
    built[e].grid_points = cfg_.grid_for(missing[e]);
    const bool coupled = contains(cfg_.mixing_nu, missing[e]);
    built[e].a.resize(n_a);
    built[e].b.resize(n_b);
    if (coupled) built[e].partners.resize(n_a);
    for (std::size_t i = 0; i < n_a; ++i) tasks.push_back({e, true, i});
    for (std::size_t i = 0; i < n_b; ++i) tasks.push_back({e, false, i});
  }

  parallel_for(tasks.size(), [&](std::size_t t) {
    const Task& task = tasks[t];
    ViscousEnsemble& ens = built[task.ensemble];
    const bool coupled = !ens.partners.empty();
    RunSetup setup;
    setup.model = cfg_.model == Scheme::inviscid ? Scheme::viscous : cfg_.model;
    setup.nu = ens.nu;
    setup.grid_points = ens.grid_points;
    setup.forcing = forcing.for_member(
        member_id(task.in_a ? Stream::ensemble_a : Stream::ensemble_b, task.index));
    setup.schedule.dt_max = cfg_.dt_max;
    setup.schedule.cfl = cfg_.cfl;
    setup.schedule.sample_interval = cfg_.sample_interval;
    setup.schedule.t_end = cfg_.bracket.T + cfg_.bracket.sigma;
    if (coupled) setup.schedule.t_end = std::max(setup.schedule.t_end, cfg_.mixing_t_end);
    setup.probes = ensemble_probes(cfg_, ens.grid_points);
    const std::size_t k = dealiased_truncation(ens.grid_points);

    if (!task.in_a) {
      ens.b[task.index] = simulate(SpectralField(k), setup);
      return;
    }
    std::vector<SpectralField> initial{random_initial(
        cfg_.seed, member_id(Stream::ensemble_a, task.index), k, cfg_.initial_amplitude)};
    if (coupled)
      initial.push_back(random_initial(cfg_.seed, member_id(Stream::partner, task.index), k,
                                       cfg_.initial_amplitude));
    auto streams = simulate_coupled(initial, setup);
    ens.a[task.index] = std::move(streams[0]);
    if (coupled) ens.partners[task.index] = std::move(streams[1]);
  });

  for (auto& e : built) {
    const double nu = e.nu;
    viscous_[nu] = std::make_shared<const ViscousEnsemble>(std::move(e));
  }
  std::vector<std::shared_ptr<const ViscousEnsemble>> out;
  for (double nu : nus) {
    auto it = std::find_if(viscous_.begin(), viscous_.end(), [nu](const auto& kv) {
      return std::abs(kv.first - nu) <= 1e-12 * std::abs(nu);
    });
    out.push_back(it->second);
  }
  return out;
}

std::shared_ptr<const std::vector<TrajectoryStream>> EnsembleCache::inviscid() {
  std::lock_guard lock(mutex_);
  if (inviscid_) return inviscid_;
  const std::size_t n = cfg_.bracket.ensemble_size;
  std::vector<TrajectoryStream> streams(n);
  ForcingSpec forcing = ForcingSpec::parse(cfg_.forcing);
  forcing.seed = cfg_.seed;
  parallel_for(n, [&](std::size_t i) {
    InviscidSetup setup;
    setup.cells = cfg_.inviscid_cells;
    setup.forcing = forcing.for_member(member_id(Stream::inviscid, i));
    setup.schedule.dt_max = cfg_.dt_max;
    setup.schedule.cfl = std::min(cfg_.cfl, 0.8);
    setup.schedule.sample_interval = cfg_.sample_interval;
    setup.schedule.t_end = cfg_.bracket.T + cfg_.bracket.sigma;
    setup.probes = ensemble_probes(cfg_, cfg_.inviscid_cells);
    setup.probes.sobolev_orders.clear();
    CellField u0;
    u0.averages.assign(cfg_.inviscid_cells, 0.0);
    streams[i] = simulate_inviscid(u0, setup);
  });
  inviscid_ = std::make_shared<const std::vector<TrajectoryStream>>(std::move(streams));
  return inviscid_;
}

}  // namespace burgers::harness
