#include "burgers/inviscid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "burgers/errors.hpp"
#include "burgers/fft.hpp"

namespace burgers {

CellField CellField::from_antiderivative(std::size_t n, double (*F)(double)) {
  CellField c;
  c.averages.resize(n);
  const double dx = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = static_cast<double>(j) * dx;
    c.averages[j] = (F(a + dx) - F(a)) / dx;
  }
  return c;
}

double riemann_flux(double ul, double ur) noexcept {
  const double fl = 0.5 * ul * ul;
  const double fr = 0.5 * ur * ur;
  if (ul > ur) {
    // Shock with speed (ul + ur)/2; the interface sees the upwind state.
    const double speed = 0.5 * (ul + ur);
    if (speed > 0.0) return fl;
    if (speed < 0.0) return fr;
    return fl;  // stationary shock: fl == fr
  }
  // Rarefaction: minimum of f over [ul, ur].
  if (ul <= 0.0 && ur >= 0.0) return 0.0;
  return std::min(fl, fr);
}

CellField step_inviscid(const CellField& c, double dt, const std::optional<GridField>& kick) {
  const std::size_t n = c.size();
  if (n < 4) throw ConfigurationError("inviscid grid needs at least 4 cells");
  if (!(dt > 0.0)) throw DomainError("step size must be positive");
  const double dx = 1.0 / static_cast<double>(n);
  double peak = 0.0;
  for (double v : c.averages) peak = std::max(peak, std::abs(v));
  if (dt * peak > kMaxInviscidCourant * dx * (1.0 + 1e-12))
    throw StepSizeError("inviscid step violates CFL: dt*max|u|/dx = " +
                        std::to_string(dt * peak / dx));

  std::vector<double> flux(n);  // flux[j] at the interface j - 1/2
  for (std::size_t j = 0; j < n; ++j) {
    const double left = c.averages[j == 0 ? n - 1 : j - 1];
    flux[j] = riemann_flux(left, c.averages[j]);
  }
  CellField out;
  out.t = c.t + dt;
  out.averages.resize(n);
  const double ratio = dt / dx;
  for (std::size_t j = 0; j < n; ++j) {
    const double right = flux[j + 1 == n ? 0 : j + 1];
    out.averages[j] = c.averages[j] - ratio * (right - flux[j]);
  }
  if (kick) {
    if (kick->size() != n) throw DomainError("kick lives on a different grid");
    for (std::size_t j = 0; j < n; ++j) out.averages[j] += (*kick)[j];
  }
  return out;
}

KickProjector::KickProjector(std::size_t cells, std::size_t max_wavenumber)
    : cells_(cells), k_max_(max_wavenumber), basis_(cells * max_wavenumber) {
  const double dx = 1.0 / static_cast<double>(cells);
  for (std::size_t k = 1; k <= k_max_; ++k) {
    const double w = kTwoPi * static_cast<double>(k);
    for (std::size_t j = 0; j < cells; ++j) {
      // (1/dx) int_{x_j}^{x_j+dx} e^{i w x} dx
      const double a = kTwoPi * static_cast<double>((k * j) % cells) / static_cast<double>(cells);
      const double b = kTwoPi * static_cast<double>((k * (j + 1)) % cells) /
                       static_cast<double>(cells);
      const Complex diff = std::polar(1.0, b) - std::polar(1.0, a);
      basis_[(k - 1) * cells + j] = diff / Complex(0.0, w * dx);
    }
  }
}

GridField KickProjector::project(const NoiseIncrement& noise) const {
  const auto modes = noise.delta.positive_modes();
  std::vector<double> v(cells_, 0.0);
  for (std::size_t k = 1; k <= modes.size(); ++k) {
    const Complex c = modes[k - 1];
    if (c == Complex{}) continue;
    if (k > k_max_) throw ResolutionError("kick wavenumber beyond the projector table");
    for (std::size_t j = 0; j < cells_; ++j)
      v[j] += 2.0 * (c * basis_[(k - 1) * cells_ + j]).real();
  }
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(cells_);
  for (double& x : v) x -= mean;
  return GridField(std::move(v));
}

namespace {

InviscidSetup checked(InviscidSetup s) {
  if (!is_power_of_two(s.cells) || s.cells < 4)
    throw ConfigurationError("inviscid cell count must be a power of two >= 4");
  const auto& sc = s.schedule;
  if (!(sc.cfl > 0.0 && sc.cfl <= kMaxInviscidCourant))
    throw ConfigurationError("inviscid cfl must lie in (0, 0.9]");
  if (!(sc.dt_max > 0.0)) throw ConfigurationError("dt_max must be positive");
  return s;
}

}  // namespace

InviscidRun::InviscidRun(InviscidSetup setup, std::vector<CellField> initial)
    : InviscidRun(std::move(setup), std::move(initial), 0.0, 0, true) {}

InviscidRun::InviscidRun(InviscidSetup setup, std::vector<CellField> initial, double t,
                         std::uint64_t step, bool record_initial)
    : setup_(checked(std::move(setup))),
      kicks_(setup_.cells, static_cast<std::size_t>(std::max(1, setup_.forcing.max_wavenumber()))),
      u_(std::move(initial)),
      t_(t),
      step_(step) {
  if (u_.empty()) throw ConfigurationError("a run needs at least one initial state");
  for (auto& c : u_) {
    if (c.size() != setup_.cells) throw ConfigurationError("initial cells do not match setup");
    c.t = t;
    TrajectoryStream s;
    s.scheme = Scheme::inviscid;
    s.grid_points = setup_.cells;
    s.seed = setup_.forcing.seed;
    s.member_id = setup_.forcing.member_id;
    s.probes = setup_.probes;
    streams_.push_back(std::move(s));
  }
  if (record_initial) record();
}

InviscidRun InviscidRun::resume(InviscidSetup setup, const Checkpoint& c) {
  if (c.scheme != Scheme::inviscid || c.grid_points != setup.cells ||
      c.seed != setup.forcing.seed || c.member_id != setup.forcing.member_id)
    throw ConfigurationError("checkpoint does not match the inviscid configuration");
  CellField cells;
  cells.averages = c.payload;
  return InviscidRun(std::move(setup), {cells}, c.t, c.step_index, false);
}

void InviscidRun::record() {
  for (std::size_t i = 0; i < u_.size(); ++i) {
    Sample s = observe(u_[i].as_grid(), setup_.probes, t_, step_);
    if (i > 0) s.pair_l1 = l1_distance(u_[i].averages, u_[0].averages);
    streams_[i].samples.push_back(std::move(s));
    streams_[i].steps_taken = step_;
  }
}

void InviscidRun::advance_to(double t_stop) {
  const auto& sc = setup_.schedule;
  const double dx = 1.0 / static_cast<double>(setup_.cells);
  t_stop = std::min(t_stop, sc.t_end);
  const double eps = 1e-12 * std::max(1.0, sc.t_end);
  const bool forced = setup_.forcing.max_wavenumber() > 0;
  while (t_ < t_stop - eps) {
    double peak = 0.0;
    for (const auto& c : u_)
      for (double v : c.averages) peak = std::max(peak, std::abs(v));
    double dt = sc.dt_max;
    if (peak > 0.0) dt = std::min(dt, sc.cfl * dx / peak);

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

    std::optional<GridField> kick;
    if (forced) kick = kicks_.project(sample_increment(setup_.forcing, dt, step_));
    for (auto& c : u_) c = step_inviscid(c, dt, kick);
    ++step_;
    t_ = landing ? target : t_ + dt;
    for (auto& c : u_) c.t = t_;

    const bool strided = sc.observable_stride > 0 && step_ % sc.observable_stride == 0;
    if (landing || strided) record();
  }
  for (auto& s : streams_) s.steps_taken = step_;
}

Checkpoint InviscidRun::checkpoint() const {
  if (u_.size() != 1) throw ConfigurationError("checkpoints hold a single trajectory");
  Checkpoint c;
  c.scheme = Scheme::inviscid;
  c.grid_points = static_cast<std::uint32_t>(setup_.cells);
  c.member_id = setup_.forcing.member_id;
  c.seed = setup_.forcing.seed;
  c.step_index = step_;
  c.t = t_;
  c.nu = 0.0;
  c.payload = u_[0].averages;
  return c;
}

TrajectoryStream simulate_inviscid(const CellField& u0, const InviscidSetup& setup) {
  InviscidRun run(setup, {u0});
  run.run();
  return std::move(run.take_streams().front());
}

}  // namespace burgers
