#pragma once

#include <stdexcept>
#include <string>

namespace c0lat {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (|z| > 1, |a| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonDivisorError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (degree, divisor count, matrix size) was exceeded.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NotC0Error : public Error {
 public:
  using Error::Error;
};

/// A resolvent (I - conj(a) T)^{-1} is numerically singular.
class SingularResolventError : public Error {
 public:
  using Error::Error;
};

/// An internal postcondition check failed; usually means the eigenstructure
/// of the input could not be resolved numerically.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace c0lat
