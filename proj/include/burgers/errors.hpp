#pragma once

#include <stdexcept>
#include <string>

namespace burgers {

/// Base of every error raised by the library. The harness maps the concrete
/// type to a process exit status (see harness/report.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad grid size, unknown config key, malformed
/// forcing rule, under-resolved viscosity.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A grid is too coarse for the requested representation.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Index or layer outside the stored truncation, or too few data points.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A shift or time is not aligned with the sampling lattice.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// A trajectory does not cover the requested averaging window.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Explicit step exceeds the CFL limit of the finite-volume scheme.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// No dissipation breakpoint inside the resolved wavenumber range.
class UnderResolutionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite spectral modes. Carries the time and step size at failure.
class BlowUpError : public Error {
 public:
  BlowUpError(double t, double dt);

  double time() const noexcept { return t_; }
  double step_size() const noexcept { return dt_; }

 private:
  double t_;
  double dt_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace burgers
