#pragma once

#include <stdexcept>
#include <string>

namespace mubose {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or denominator hits an exact pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series failed to reach its tolerance within the term cap, or no
/// precision tier is wide enough for the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer result does not fit the integer width.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Index outside a precomputed table.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace mubose
