#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "burgers/field.hpp"
#include "burgers/trajectory.hpp"

namespace burgers {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Count, mean and centred second moment with a pairwise merge, so partial
/// results from workers combine in any order (Chan et al.).
class Moments {
 public:
  void add(double x) noexcept;
  Moments& merge(const Moments& other) noexcept;

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two values.
  double variance() const noexcept;
  double std_error() const noexcept;
  Estimate estimate() const noexcept { return {mean_, std_error()}; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Parameters of the ensemble-and-window average <<f>> = E (1/sigma) int_T^{T+sigma} f.
struct BracketSpec {
  double T = 5.0;
  double sigma = 10.0;
  std::size_t ensemble_size = 16;
  double sigma_min = 1.0;

  void validate() const;
};

using Observable = std::function<double(const Sample&)>;
using VectorObservable = std::function<std::span<const double>(const Sample&)>;

/// (1/sigma) int_T^{T+sigma} f dt for the piecewise-linear interpolant of the
/// samples. Throws CoverageError unless the samples span the window.
double time_average(const TrajectoryStream& stream, const Observable& f, double T, double sigma);

std::vector<double> time_average(const TrajectoryStream& stream, const VectorObservable& f,
                                 double T, double sigma);

/// Ensemble mean of per-trajectory window averages, with the ensemble
/// standard error.
Estimate bracket_average(std::span<const TrajectoryStream> streams, const Observable& f,
                         const BracketSpec& spec);

std::vector<Estimate> bracket_average(std::span<const TrajectoryStream> streams,
                                      const VectorObservable& f, const BracketSpec& spec);

/// Average over the given snapshots of (1/N) sum_j |u(x_j + l) - u(x_j)|^p.
/// l must be a multiple of 1/N.
double structure_function(std::span<const GridField> snapshots, double p, double l);

/// Positive members [lo, hi] of the layer J_k = {n : k/M <= |n| <= M k}.
std::pair<std::size_t, std::size_t> layer_bounds(std::size_t k, double M);

/// e_k(u): mean of 1/2 |u_n|^2 over J_k (both signs).
double energy_layer(const SpectralField& s, std::size_t k, double M);

/// Same layer mean from modal energies, modal[n-1] = 1/2 |u_n|^2.
double energy_layer(std::span<const double> modal, std::size_t k, double M);

struct DataPoint {
  double x = 0.0;
  double y = 0.0;
  double std_error = 0.0;
};

struct PowerLawFit {
  double exponent = 0.0;
  double exponent_std_error = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // weighted rms of log residuals
  std::size_t points = 0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

/// Weighted least squares of log y on log x over points with x in
/// [x_lo, x_hi]. Weights are (y / std_error)^2 when every point carries an
/// error, uniform otherwise; the exponent error is scaled by the residual.
PowerLawFit fit_power_law(std::span<const DataPoint> points, std::pair<double, double> window,
                          std::size_t min_points = 4);

struct SpectrumReport {
  double M = 2.0;
  std::vector<std::size_t> k;
  std::vector<Estimate> energy;
  std::optional<PowerLawFit> fit;

  std::vector<DataPoint> points() const;
};

/// Layer spectrum E_k for k = 1..k_max from the `spectrum` probe: each
/// trajectory's modal energies are window-averaged, layered, then averaged
/// over the ensemble.
SpectrumReport spectrum_report(std::span<const TrajectoryStream> streams, const BracketSpec& spec,
                               double M, std::size_t k_max);

struct StructureReport {
  std::vector<double> p;
  std::vector<double> l;
  std::vector<std::vector<Estimate>> S;  // [p][l]

  std::vector<DataPoint> points(std::size_t p_index) const;
};

StructureReport structure_report(std::span<const TrajectoryStream> streams,
                                 const BracketSpec& spec);

/// First wavenumber from which the local log-log slope of E_k stays below
/// `slope_threshold` over a band [k, band * k]. The local slope at k is the
/// least-squares slope over [k / 2^{1/4}, k * 2^{1/4}]. Throws
/// UnderResolutionError if no such k exists in the report.
double dissipation_scale(const SpectrumReport& report, double slope_threshold = -4.0,
                         double band = 2.0);

struct Functional {
  std::string name;
  Observable f;
};

/// |u|_{L1}, |u|_{L2}^2, |u_1|^2 and |u_2|^2.
std::vector<Functional> default_functionals();

struct MixingRow {
  double t = 0.0;
  std::vector<Estimate> distance;  // |E f(u_A) - E f(u_B)| with joint std error
  std::optional<Estimate> coupled_l1;
};

/// Per-time distances of functional means between two ensembles. In coupled
/// mode, member i of A and member i of B share a noise path and the ensemble
/// mean of |u_A - u_B|_{L1} is reported too (from grid snapshots, or from
/// pair_l1 stored by a coupled run). Throws AlignmentError if a time in
/// t_grid is not sampled exactly.
std::vector<MixingRow> mixing_distance(std::span<const TrajectoryStream> ens_a,
                                       std::span<const TrajectoryStream> ens_b,
                                       const std::vector<Functional>& functionals,
                                       std::span<const double> t_grid, bool coupled);

/// Sample at exactly time t; throws AlignmentError if absent.
const Sample& sample_at(const TrajectoryStream& stream, double t);

/// Integrated autocorrelation time in units of the sample spacing
/// (1 + 2 sum of autocorrelations up to the first non-positive one).
double integrated_autocorrelation(std::span<const double> series);

}  // namespace burgers
