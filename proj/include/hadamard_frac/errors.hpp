#pragma once

#include <stdexcept>
#include <string>

namespace hfrac {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature that did not reach its tolerance. Carries what it did reach.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double value, double error_estimate)
      : std::runtime_error(what + " (value " + std::to_string(value) + ", error estimate " +
                           std::to_string(error_estimate) + ")"),
        value_(value),
        error_estimate_(error_estimate) {}

  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

/// Proof-exponent guard violated (kappa or ell too small, gamma >= p - 1, ...).
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Improper integral whose tail cannot be bounded.
class DivergentIntegral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hfrac
