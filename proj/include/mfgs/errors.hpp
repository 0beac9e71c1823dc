// errors.hpp — exception types shared by every module
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mfgs {

// Input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation is not defined for the given input (e.g. pointwise J of a discrete bath).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// e^{x} would overflow; carries the offending exponent.
class OverflowError : public NumericalError {
 public:
  OverflowError(const std::string& what, double exponent)
      : NumericalError(what), exponent_(exponent) {}
  double exponent() const noexcept { return exponent_; }

 private:
  double exponent_;
};

// Adaptive quadrature gave up; carries the best available estimate.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, std::complex<double> best, double error_estimate)
      : NumericalError(what), best_(best), error_(error_estimate) {}
  std::complex<double> best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  std::complex<double> best_;
  double error_;
};

}  // namespace mfgs
