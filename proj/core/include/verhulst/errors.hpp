#pragma once

#include <stdexcept>
#include <string>

namespace verhulst {

/// Argument outside the documented domain of an evaluator (e.g. Θ below its
/// small-time cutoff, Bessel argument above the overflow guard).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature or series failed to meet its tolerance within budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model or configuration parameters violate a type invariant.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A conditional kernel was asked for a point where the conditioning density
/// is numerically zero.
class OutOfSupport : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace verhulst
