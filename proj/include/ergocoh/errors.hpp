#pragma once

#include <stdexcept>
#include <string>

namespace ergocoh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated a structural invariant (shape, Hermiticity, trace,
/// positivity, ordering, completeness).
class ValidationError : public Error {
 public:
  enum class Kind {
    NotSquare,
    DimensionMismatch,
    NonHermitian,
    TraceNotOne,
    NegativeEigenvalue,
    NotAscending,
    NotFinite,
    IncompleteChannel,
    BadPermutation,
    Parse,
  };

  ValidationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A scalar argument lies outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A Fock-space truncation is too small for the requested state.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

const char* to_string(ValidationError::Kind kind) noexcept;

}  // namespace ergocoh
