#pragma once

#include <stdexcept>
#include <string>

namespace tetlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical or numerical parameter is outside its admissible range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A density has zero, negative or non-finite total mass.
class DegenerateDistribution : public Error {
 public:
  using Error::Error;
};

/// The position Jacobian dQ/dq0 vanishes at the inverted point.
class CausticSingularity : public Error {
 public:
  using Error::Error;
};

/// The trajectory velocity vanishes at the requested crossing.
class TurningPoint : public Error {
 public:
  using Error::Error;
};

/// The family does not provide an inversion the formula needs.
class UnsupportedInversion : public Error {
 public:
  using Error::Error;
};

/// A quadrature did not reach its tolerance. Carries the best estimate.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_estimate);

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

}  // namespace tetlab
