#pragma once

#include <stdexcept>
#include <string>

namespace glab {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The request exceeds a configured memory, size or precision budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The extremal construction was asked for k below the supported regime.
class UnsupportedRegime : public DomainError {
 public:
  UnsupportedRegime(const std::string& what, unsigned long long k_min)
      : DomainError(what), k_min_(k_min) {}
  unsigned long long k_min() const noexcept { return k_min_; }

 private:
  unsigned long long k_min_;
};

/// A structural invariant of a computed object failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or overflow inside extended-precision arithmetic.
class NumericContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace glab
