#pragma once

#include <stdexcept>
#include <string>

namespace quasilin {

/// Argument outside the open domain of a map (t >= L, v >= Lambda, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An evaluation whose true value is +inf or overflows double range.
class InfiniteValueError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed input data: negative beta samples, non-monotone g, bad CSV, ...
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis required by an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical failure: Newton stagnation, quadrature budget exhausted.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quasilin
