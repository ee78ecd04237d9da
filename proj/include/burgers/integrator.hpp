#pragma once

#include <cstdint>
#include <vector>

#include "burgers/checkpoint.hpp"
#include "burgers/fft.hpp"
#include "burgers/field.hpp"
#include "burgers/forcing.hpp"
#include "burgers/trajectory.hpp"

namespace burgers {

/// Smallest power of two N with N >= factor / nu (and N >= 16).
std::size_t grid_points_for(double nu, double factor = 8.0);

/// Largest active wavenumber under the 2/3 rule for an N-point carrier.
std::size_t dealiased_truncation(std::size_t grid_points);

struct SolverState {
  double t = 0.0;
  SpectralField u{1};
  double nu = 1.0;
  std::size_t grid_points = 16;
  std::uint64_t step_index = 0;

  std::size_t active_truncation() const { return dealiased_truncation(grid_points); }
};

/// Integrating-factor Heun stepper for
///   u_t + (u^2/2)_x - nu u_xx = d xi/dt.
///
/// Mode k is advanced with the exact diffusion factor E_k = exp(-nu (2 pi k)^2 dt);
/// the quadratic term is evaluated pseudospectrally on the N-point carrier
/// with 2/3-rule truncation. The forcing increment of mode k is scaled by
/// sqrt((1 - E_k^2) / (2 nu (2 pi k)^2 dt)), so that its variance equals that
/// of the exact stochastic convolution over the step.
///
/// The stepper owns its FFT workspace and is not shareable across threads.
class SpectralStepper {
 public:
  SpectralStepper(double nu, std::size_t grid_points, bool nonlinear = true);

  double nu() const noexcept { return nu_; }
  std::size_t grid_points() const noexcept { return ws_.size(); }
  std::size_t truncation() const noexcept { return k_active_; }

  /// Evaluates the nonlinear term at u and returns |u|_{L_inf} on the grid.
  /// Must precede advance().
  double load(const SpectralField& u);

  /// One step from the loaded state; `t` is reported on blow-up.
  SpectralField advance(double dt, const NoiseIncrement& noise, double t);

  /// load() + advance() on a full state.
  SolverState step(const SolverState& state, double dt, const NoiseIncrement& noise);

 private:
  void nonlinear_term(std::span<const Complex> u, std::span<Complex> out, double* sup);

  double nu_;
  bool nonlinear_;
  std::size_t k_active_;
  FftWorkspace ws_;
  std::vector<Complex> u0_, n0_, stage_, n1_;
  std::vector<double> decay_;
};

/// Convenience wrapper constructing a stepper for state.nu / state.grid_points.
SolverState step(const SolverState& state, double dt, const NoiseIncrement& noise,
                 bool nonlinear = true);

struct RunSetup {
  Scheme model = Scheme::viscous;  // viscous or linearized
  double nu = 1e-2;
  std::size_t grid_points = 0;  // 0: grid_points_for(nu)
  ForcingSpec forcing;
  StepSchedule schedule;
  ProbeSet probes;
};

/// One or more spectral trajectories advanced in lock step under the same
/// noise path. With more than one member the step size is the minimum of the
/// members' CFL limits, so every member sees identical Brownian increments;
/// samples of members 1.. carry pair_l1 against member 0.
class SpectralRun {
 public:
  SpectralRun(RunSetup setup, std::vector<SpectralField> initial);

  /// Continues a single-member run from a checkpoint. The resumed stream
  /// holds only samples after the checkpoint time.
  static SpectralRun resume(RunSetup setup, const Checkpoint& checkpoint);

  void advance_to(double t_stop);
  void run() { advance_to(setup_.schedule.t_end); }
  bool finished() const;

  double time() const noexcept { return t_; }
  std::uint64_t step_index() const noexcept { return step_; }
  const SpectralField& state(std::size_t member = 0) const { return u_.at(member); }
  const RunSetup& setup() const noexcept { return setup_; }

  Checkpoint checkpoint() const;

  const std::vector<TrajectoryStream>& streams() const noexcept { return streams_; }
  std::vector<TrajectoryStream> take_streams() { return std::move(streams_); }

 private:
  SpectralRun(RunSetup setup, std::vector<SpectralField> initial, double t, std::uint64_t step,
              bool record_initial);
  void record();

  RunSetup setup_;
  std::vector<SpectralStepper> steppers_;
  std::vector<SpectralField> u_;
  std::vector<TrajectoryStream> streams_;
  double t_ = 0.0;
  std::uint64_t step_ = 0;
  double last_recorded_ = -1.0;
};

TrajectoryStream simulate(const SpectralField& u0, const RunSetup& setup);

std::vector<TrajectoryStream> simulate_coupled(const std::vector<SpectralField>& initial,
                                               const RunSetup& setup);

/// Exact solution of the unforced viscous equation from u0 = amplitude *
/// sin(2 pi x), via u = -2 nu (log phi)_x with phi solving the heat equation.
/// The Fourier coefficients of phi(0) are modified Bessel values, advanced
/// exactly in time and summed directly on the grid.
GridField cole_hopf_reference(double amplitude, double nu, double t, std::size_t n);

/// Stationary variance b_s^2 / (2 nu (2 pi s)^2) of the coefficient of e_s in
/// the linearised equation.
double ou_reference_variance(int s, double nu, double b_s);

}  // namespace burgers
