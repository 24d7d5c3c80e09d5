#pragma once

#include <stdexcept>
#include <string>

namespace vdw {

/// Argument outside the mathematical or geometric domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or quadrature failed to reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested expansion order exceeds the configured hard cap.
class OrderCapError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Intermediate quantity left the representable floating-point range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace vdw
