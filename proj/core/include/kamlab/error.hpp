#pragma once

#include <stdexcept>
#include <string>

namespace kamlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid numeric input (non-positive step, rho <= 0, empty word, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Query outside the declared substrate or grid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Missing field, bad window sizing, inconsistent inputs.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Bounds or invariants that contradict each other beyond their margins.
class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A minimizer touched the edge of its computational window.
class BoundaryContact : public Error {
 public:
  using Error::Error;
};

}  // namespace kamlab
