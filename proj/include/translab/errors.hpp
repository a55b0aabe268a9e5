#pragma once

#include <stdexcept>
#include <string>

namespace translab {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on ambient shape or on field.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// A denominator (or the field extension choice) collides with the characteristic.
class BadPrime : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured point budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SingularTransform : public Error {
 public:
  using Error::Error;
};

class NotIdempotent : public Error {
 public:
  using Error::Error;
};

class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (scalar strings, subspace JSON, family specs).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace translab
