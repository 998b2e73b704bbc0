#pragma once

#include <stdexcept>
#include <string>

namespace fhardy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong dimension, non-positive dilation, ...
class InputError : public Error {
 public:
  using Error::Error;
};

/// Incompatible or unsupported configuration (kind/law mismatch, s >= 1, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A weight average vanished or diverged at some point.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameter conditions of a closed-form constant were violated.
class ConditionError : public Error {
 public:
  using Error::Error;
};

/// Quadrature did not converge, hit a non-finite value, or ran out of budget.
/// Carries the best partial value when one exists.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double partial_value = 0.0,
               double partial_error = 0.0)
      : Error(what), partial_value_(partial_value), partial_error_(partial_error) {}

  double partial_value() const { return partial_value_; }
  double partial_error() const { return partial_error_; }

 private:
  double partial_value_;
  double partial_error_;
};

}  // namespace fhardy
