#include "burgers/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "burgers/errors.hpp"

namespace burgers {

std::size_t grid_points_for(double nu, double factor) {
  if (!(nu > 0.0)) throw DomainError("resolution rule needs nu > 0");
  const double need = factor / nu;
  std::size_t n = 16;
  while (static_cast<double>(n) < need) n *= 2;
  return n;
}

std::size_t dealiased_truncation(std::size_t grid_points) {
  return (2 * (grid_points / 2 - 1)) / 3;
}

SpectralStepper::SpectralStepper(double nu, std::size_t grid_points, bool nonlinear)
    : nu_(nu),
      nonlinear_(nonlinear),
      k_active_(dealiased_truncation(grid_points)),
      ws_(grid_points),
      u0_(k_active_),
      n0_(k_active_),
      stage_(k_active_),
      n1_(k_active_),
      decay_(k_active_) {
  if (!(nu > 0.0)) throw DomainError("spectral stepper needs nu > 0");
  if (k_active_ < 1) throw ConfigurationError("grid too small for a dealiased spectrum");
}

void SpectralStepper::nonlinear_term(std::span<const Complex> u, std::span<Complex> out,
                                     double* sup) {
  auto spec = ws_.spectrum();
  std::fill(spec.begin(), spec.end(), Complex{});
  std::copy(u.begin(), u.end(), spec.begin() + 1);
  ws_.inverse();
  auto grid = ws_.real();
  if (sup) {
    double m = 0.0;
    for (double v : grid) m = std::max(m, std::abs(v));
    *sup = m;
  }
  if (!nonlinear_) {
    std::fill(out.begin(), out.end(), Complex{});
    return;
  }
  for (double& v : grid) v = 0.5 * v * v;
  ws_.forward();
  // -(u^2/2)_x: multiply by -2 pi i k, discard everything above K_active.
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double k = kTwoPi * static_cast<double>(i + 1);
    const Complex f = spec[i + 1];
    out[i] = Complex(k * f.imag(), -k * f.real());
  }
}

double SpectralStepper::load(const SpectralField& u) {
  const auto modes = u.positive_modes();
  const std::size_t n = std::min(modes.size(), k_active_);
  std::copy_n(modes.begin(), n, u0_.begin());
  std::fill(u0_.begin() + static_cast<std::ptrdiff_t>(n), u0_.end(), Complex{});
  double sup = 0.0;
  nonlinear_term(u0_, n0_, &sup);
  return sup;
}

SpectralField SpectralStepper::advance(double dt, const NoiseIncrement& noise, double t) {
  if (!(dt > 0.0)) throw DomainError("step size must be positive");
  const auto xi = noise.delta.positive_modes();
  std::size_t noise_k = 0;
  for (std::size_t i = 0; i < xi.size(); ++i)
    if (xi[i] != Complex{}) noise_k = i + 1;
  if (noise_k > k_active_)
    throw ResolutionError("forcing wavenumber " + std::to_string(noise_k) +
                          " exceeds the dealiased truncation " + std::to_string(k_active_));

  const double lambda1 = nu_ * kTwoPi * kTwoPi;
  auto noise_weight = [&](std::size_t k) {
    const double x = 2.0 * lambda1 * static_cast<double>(k * k) * dt;
    return x > 1e-14 ? std::sqrt(-std::expm1(-x) / x) : 1.0;
  };

  // E_k = q^{k^2} by the recurrence E_k = E_{k-1} q^{2k-1}.
  const double q = std::exp(-lambda1 * dt);
  const double q2 = q * q;
  double decay = 1.0;
  double ratio = q;
  auto& e = decay_;
  for (std::size_t i = 0; i < k_active_; ++i) {
    decay *= ratio;
    ratio *= q2;
    e[i] = decay;
    Complex s = decay * (u0_[i] + dt * n0_[i]);
    if (i < noise_k) s += noise_weight(i + 1) * xi[i];
    stage_[i] = s;
  }
  if (nonlinear_) nonlinear_term(stage_, n1_, nullptr);

  std::vector<Complex> next(k_active_);
  double energy = 0.0;
  const double half = 0.5 * dt;
  for (std::size_t i = 0; i < k_active_; ++i) {
    Complex v = e[i] * (u0_[i] + half * n0_[i]);
    if (nonlinear_) v += half * n1_[i];
    if (i < noise_k) v += noise_weight(i + 1) * xi[i];
    next[i] = v;
    energy += std::norm(v);
  }
  if (!std::isfinite(energy)) throw BlowUpError(t, dt);
  return SpectralField(std::move(next));
}

SolverState SpectralStepper::step(const SolverState& state, double dt,
                                  const NoiseIncrement& noise) {
  const auto xi = noise.delta.positive_modes();
  const bool silent = std::all_of(xi.begin(), xi.end(), [](Complex c) { return c == Complex{}; });
  if (noise.dt != dt && !silent) throw DomainError("noise increment was sampled for a different dt");
  load(state.u);
  SolverState out = state;
  out.u = advance(dt, noise, state.t);
  out.t = state.t + dt;
  out.step_index = state.step_index + 1;
  return out;
}

SolverState step(const SolverState& state, double dt, const NoiseIncrement& noise,
                 bool nonlinear) {
  SpectralStepper stepper(state.nu, state.grid_points, nonlinear);
  return stepper.step(state, dt, noise);
}

namespace {

void validate_setup(const RunSetup& s) {
  if (s.model == Scheme::inviscid)
    throw ConfigurationError("the spectral run handles viscous and linearized models only");
  if (!(s.nu > 0.0) || s.nu > 1.0) throw ConfigurationError("viscosity must lie in (0, 1]");
  const auto& sc = s.schedule;
  if (!(sc.cfl > 0.0 && sc.cfl < 1.0)) throw ConfigurationError("cfl must lie in (0, 1)");
  if (!(sc.dt_max > 0.0)) throw ConfigurationError("dt_max must be positive");
  if (!(sc.t_end >= 0.0)) throw ConfigurationError("t_end must be non-negative");
  if (sc.sample_interval < 0.0) throw ConfigurationError("sample_interval must be >= 0");
}

RunSetup resolved(RunSetup s) {
  if (s.grid_points == 0) s.grid_points = grid_points_for(s.nu);
  validate_setup(s);
  if (static_cast<std::size_t>(s.forcing.max_wavenumber()) > dealiased_truncation(s.grid_points))
    throw ResolutionError("forcing is not resolved by the dealiased grid");
  return s;
}

}  // namespace

SpectralRun::SpectralRun(RunSetup setup, std::vector<SpectralField> initial)
    : SpectralRun(std::move(setup), std::move(initial), 0.0, 0, true) {}

SpectralRun::SpectralRun(RunSetup setup, std::vector<SpectralField> initial, double t,
                         std::uint64_t step, bool record_initial)
    : setup_(resolved(std::move(setup))), t_(t), step_(step) {
  if (initial.empty()) throw ConfigurationError("a run needs at least one initial state");
  const std::size_t k = dealiased_truncation(setup_.grid_points);
  const bool nonlinear = setup_.model == Scheme::viscous;
  for (auto& u0 : initial) {
    u_.push_back(u0.resized(k));
    steppers_.emplace_back(setup_.nu, setup_.grid_points, nonlinear);
    TrajectoryStream s;
    s.scheme = setup_.model;
    s.nu = setup_.nu;
    s.grid_points = setup_.grid_points;
    s.seed = setup_.forcing.seed;
    s.member_id = setup_.forcing.member_id;
    s.probes = setup_.probes;
    streams_.push_back(std::move(s));
  }
  if (record_initial) record();
}

SpectralRun SpectralRun::resume(RunSetup setup, const Checkpoint& c) {
  setup = resolved(std::move(setup));
  if (c.scheme != setup.model || c.grid_points != setup.grid_points || c.nu != setup.nu ||
      c.seed != setup.forcing.seed || c.member_id != setup.forcing.member_id)
    throw ConfigurationError("checkpoint does not match the run configuration");
  std::vector<Complex> modes(c.payload.size() / 2);
  for (std::size_t i = 0; i < modes.size(); ++i)
    modes[i] = Complex(c.payload[2 * i], c.payload[2 * i + 1]);
  std::vector<SpectralField> initial;
  initial.emplace_back(std::move(modes));
  return SpectralRun(std::move(setup), std::move(initial), c.t, c.step_index, false);
}

bool SpectralRun::finished() const {
  const double t_end = setup_.schedule.t_end;
  return t_ >= t_end - 1e-12 * std::max(1.0, t_end);
}

void SpectralRun::record() {
  const ProbeSet& probes = setup_.probes;
  const std::size_t n = setup_.grid_points;
  std::vector<double> reference;
  if (u_.size() > 1) {
    const GridField g0 = to_grid(u_[0], n);
    reference.assign(g0.values().begin(), g0.values().end());
  }
  for (std::size_t i = 0; i < u_.size(); ++i) {
    Sample s = observe(u_[i], n, probes, t_, step_);
    if (i > 0) s.pair_l1 = l1_distance(to_grid(u_[i], n).values(), reference);
    streams_[i].samples.push_back(std::move(s));
    streams_[i].steps_taken = step_;
  }
  last_recorded_ = t_;
}

void SpectralRun::advance_to(double t_stop) {
  const auto& sc = setup_.schedule;
  const double dx = 1.0 / static_cast<double>(setup_.grid_points);
  t_stop = std::min(t_stop, sc.t_end);
  const double eps = 1e-12 * std::max(1.0, sc.t_end);
  while (t_ < t_stop - eps) {
    double sup = 0.0;
    for (std::size_t i = 0; i < u_.size(); ++i) sup = std::max(sup, steppers_[i].load(u_[i]));
    double dt = sc.dt_max;
    if (sup > 0.0) dt = std::min(dt, sc.cfl * dx / sup);

    double target = sc.t_end;
    if (sc.sample_interval > 0.0) {
      const double next =
          sc.sample_interval * (std::floor(t_ / sc.sample_interval + 1e-9) + 1.0);
      if (next < sc.t_end - eps) target = next;
    }
    const double remaining = target - t_;
    bool landing = false;
    if (dt >= remaining) {
      dt = remaining;
      landing = true;
    } else if (remaining - dt < 0.5 * dt) {
      dt = 0.5 * remaining;
    }

    const NoiseIncrement noise = sample_increment(setup_.forcing, dt, step_);
    for (std::size_t i = 0; i < u_.size(); ++i) u_[i] = steppers_[i].advance(dt, noise, t_);
    ++step_;
    t_ = landing ? target : t_ + dt;

    const bool strided = sc.observable_stride > 0 && step_ % sc.observable_stride == 0;
    if (landing || strided) record();
  }
  for (auto& s : streams_) s.steps_taken = step_;
}

Checkpoint SpectralRun::checkpoint() const {
  if (u_.size() != 1) throw ConfigurationError("checkpoints hold a single trajectory");
  Checkpoint c;
  c.scheme = setup_.model;
  c.grid_points = static_cast<std::uint32_t>(setup_.grid_points);
  c.member_id = setup_.forcing.member_id;
  c.seed = setup_.forcing.seed;
  c.step_index = step_;
  c.t = t_;
  c.nu = setup_.nu;
  for (const Complex& m : u_[0].positive_modes()) {
    c.payload.push_back(m.real());
    c.payload.push_back(m.imag());
  }
  return c;
}

TrajectoryStream simulate(const SpectralField& u0, const RunSetup& setup) {
  SpectralRun run(setup, {u0});
  run.run();
  return std::move(run.take_streams().front());
}

std::vector<TrajectoryStream> simulate_coupled(const std::vector<SpectralField>& initial,
                                               const RunSetup& setup) {
  SpectralRun run(setup, initial);
  run.run();
  return run.take_streams();
}

double ou_reference_variance(int s, double nu, double b_s) {
  if (!(nu > 0.0)) throw DomainError("OU variance needs nu > 0");
  if (s == 0) throw DomainError("OU variance is undefined for the mean mode");
  const double k = kTwoPi * s;
  return b_s * b_s / (2.0 * nu * k * k);
}

}  // namespace burgers
