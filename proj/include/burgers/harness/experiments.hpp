#pragma once

#include "burgers/harness/config.hpp"
#include "burgers/harness/ensemble.hpp"
#include "burgers/harness/report.hpp"

namespace burgers::harness {

/// Bracket averages of squared Sobolev norms across nu_list and their fitted
/// nu-exponents (targets -(2m-1); -1 for every m in the linearised model),
/// plus the energy-balance ratio nu <<|u|_1^2>> / B_0.
Section run_scaling_experiment(EnsembleCache& cache);

/// Layer spectra per nu, the inertial slope at the smallest nu and the
/// exponent of the spectral breakpoint k*(nu).
Section run_spectrum_experiment(EnsembleCache& cache);

/// Structure functions per nu with inertial-range exponents at the smallest
/// nu and dissipation-range exponents at the largest.
Section run_structure_experiment(EnsembleCache& cache);

/// Coupled-noise L1 contraction and independent-ensemble convergence of low
/// functionals at every mixing viscosity.
Section run_mixing_experiment(EnsembleCache& cache);

/// Entropy-solution spectrum and structure exponents, and the viscous to
/// inviscid L1 gap on a fixed kick path.
Section run_inviscid_experiment(EnsembleCache& cache);

/// Single trajectory per cfg (`simulate` subcommand): samples table and a
/// final checkpoint written under <out>/simulate/.
Section run_simulation(const ExperimentConfig& cfg, const std::string& resume_from = "");

}  // namespace burgers::harness
