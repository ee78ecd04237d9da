#pragma once

#include <optional>
#include <vector>

#include "burgers/checkpoint.hpp"
#include "burgers/field.hpp"
#include "burgers/forcing.hpp"
#include "burgers/trajectory.hpp"

namespace burgers {

/// Cell averages on N uniform cells of width 1/N.
struct CellField {
  std::vector<double> averages;
  double t = 0.0;

  std::size_t size() const noexcept { return averages.size(); }
  GridField as_grid() const { return GridField(averages); }
  /// Exact cell averages of a function given by its antiderivative F.
  static CellField from_antiderivative(std::size_t n, double (*F)(double));
};

/// Godunov flux of f(u) = u^2/2 from the exact Riemann solution at x/t = 0.
double riemann_flux(double u_left, double u_right) noexcept;

/// Largest Courant number accepted by step_inviscid.
inline constexpr double kMaxInviscidCourant = 0.9;

/// One conservative Godunov step, then the kick (cell averages of the
/// forcing increment) if present. Throws StepSizeError when
/// dt * max|u| / dx exceeds kMaxInviscidCourant.
CellField step_inviscid(const CellField& c, double dt, const std::optional<GridField>& kick);

/// Cell averages of sum_s b_s dbeta_s e_s on an N-cell grid.
class KickProjector {
 public:
  KickProjector(std::size_t cells, std::size_t max_wavenumber);
  GridField project(const NoiseIncrement& noise) const;

 private:
  std::size_t cells_;
  std::size_t k_max_;
  std::vector<Complex> basis_;  // [k-1][j]: cell average of e^{2 pi i k x}
};

struct InviscidSetup {
  std::size_t cells = 8192;
  ForcingSpec forcing;
  StepSchedule schedule{1e-3, 0.8, 1.0, 0, 0.0};
  ProbeSet probes;
};

/// Entropy-solution trajectory with the same sampling rules as SpectralRun.
/// With more than one member, all members share dt and kicks and samples of
/// members 1.. carry pair_l1 against member 0.
class InviscidRun {
 public:
  InviscidRun(InviscidSetup setup, std::vector<CellField> initial);
  static InviscidRun resume(InviscidSetup setup, const Checkpoint& checkpoint);

  void advance_to(double t_stop);
  void run() { advance_to(setup_.schedule.t_end); }

  double time() const noexcept { return t_; }
  const CellField& state(std::size_t member = 0) const { return u_.at(member); }
  Checkpoint checkpoint() const;
  const std::vector<TrajectoryStream>& streams() const noexcept { return streams_; }
  std::vector<TrajectoryStream> take_streams() { return std::move(streams_); }

 private:
  InviscidRun(InviscidSetup setup, std::vector<CellField> initial, double t, std::uint64_t step,
              bool record_initial);
  void record();

  InviscidSetup setup_;
  KickProjector kicks_;
  std::vector<CellField> u_;
  std::vector<TrajectoryStream> streams_;
  double t_ = 0.0;
  std::uint64_t step_ = 0;
};

TrajectoryStream simulate_inviscid(const CellField& u0, const InviscidSetup& setup);

}  // namespace burgers
