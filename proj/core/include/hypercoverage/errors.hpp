#pragma once

#include <stdexcept>
#include <string>

namespace hypercoverage {

/// Argument outside the mathematical domain of an operation (bad level,
/// mismatched shapes, n not equal to p^d, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// An exact integer quantity (p^d, n^t) does not fit the representable range.
class CapacityError : public std::overflow_error {
  public:
    using std::overflow_error::overflow_error;
};

/// Parameters outside the family a constructor supports.
class UnsupportedParameters : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input data that fails a structural check (e.g. an array without its declared strength).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class InsufficientData : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hypercoverage
