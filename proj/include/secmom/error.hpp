#pragma once

#include <stdexcept>
#include <string>

namespace secmom {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument inside the domain but outside the range a formula is valid for;
/// the caller should fall back to another engine (reflection, enumeration).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Requested a case the library deliberately does not cover (prime powers,
/// gamma pieces for k > 2, ...).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal identity failed: inexact division, engines disagreeing,
/// group order mismatch. Always a bug or a broken hypothesis, never user error.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical quality check failed (imaginary residue, unitarity drift).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace secmom
