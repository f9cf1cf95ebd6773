#pragma once

#include <stdexcept>
#include <string>

namespace clouds {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (a level outside
/// [0,1], a non-comonotonic cloud where one is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariants of the type being constructed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace clouds
