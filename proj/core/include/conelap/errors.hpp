#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conelap {

/// Bad shapes, out-of-range parameters, malformed files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of the numerics on otherwise valid input.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public NumericError {
 public:
  NotPositiveDefinite(const std::string& where, std::size_t pivot, double value)
      : NumericError(where + ": matrix is not positive definite (pivot " +
                     std::to_string(pivot) + " = " + std::to_string(value) + ")"),
        pivot_(pivot),
        value_(value) {}

  std::size_t pivot() const noexcept { return pivot_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& where, double residual)
      : NumericError(where + ": no convergence (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace conelap
