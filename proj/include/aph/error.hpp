#pragma once

#include <stdexcept>
#include <string>

namespace aph {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition (bad grid size, p < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The curve has (numerically) vanishing tangent somewhere.
class DegenerateTangent : public Error {
 public:
  using Error::Error;
};

/// Initial data the flow refuses: negative orientation or zero enclosed area.
class InvalidInitialCurve : public Error {
 public:
  using Error::Error;
};

}  // namespace aph
