#pragma once

#include <stdexcept>
#include <string>

namespace cluster {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different variable rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Division by zero, or a substitution/evaluation that hits a pole.
class ZeroDivision : public Error {
 public:
  using Error::Error;
};

/// Malformed function text, quiver JSON, or group-element syntax.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Exchange matrix, multipliers or frozen set violate the quiver invariants.
class InvalidQuiver : public Error {
 public:
  using Error::Error;
};

/// Group elements or seeds that do not share a base quiver.
class BaseMismatch : public Error {
 public:
  using Error::Error;
};

/// Mutation requested at a frozen node or an out-of-range node.
class IllegalMutation : public Error {
 public:
  using Error::Error;
};

/// A search or closure exceeded its configured bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// A value that is required to be Laurent (or monomial) is not.
class NotLaurent : public Error {
 public:
  using Error::Error;
};

/// Unknown catalog entry or malformed catalog parameters.
class CatalogError : public Error {
 public:
  using Error::Error;
};

}  // namespace cluster
