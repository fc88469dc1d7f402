#pragma once

#include <stdexcept>
#include <string>

namespace dsw {

/// Base of every error raised by the library. Each subclass names the
/// violated precondition so the CLI can report it verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (modulus, period, tolerance ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested speed is at or below 4*pi^2/L^2: no L-periodic wave exists.
class BelowThresholdError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Theta too close to zero to classify the zero eigenvalue.
class DegenerateThetaError : public Error {
 public:
  using Error::Error;
};

/// The 3x3 matrix D is singular; the index count is undefined.
class DegenerateMatrixError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class MeanZeroViolation : public Error {
 public:
  using Error::Error;
};

/// Raised by the growth experiment when there is nothing to fit.
class NoUnstableModeError : public Error {
 public:
  using Error::Error;
};

class WindowTooShortError : public Error {
 public:
  using Error::Error;
};

/// Time integration produced non-finite or huge coefficients.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double last_finite_time)
      : Error(what), last_finite_time_(last_finite_time) {}
  double last_finite_time() const noexcept { return last_finite_time_; }

 private:
  double last_finite_time_;
};

}  // namespace dsw
