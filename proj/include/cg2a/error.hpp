#pragma once

#include <stdexcept>
#include <string>

namespace cg2a {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown type, node, marker or relation identifier.
class IdentifierError : public Error {
 public:
  using Error::Error;
};

/// Argument position or argument count does not match a relation arity.
class ArityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A variable had no admissible value left when it was drawn.
class InstantiationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed document. The message carries the file and field path.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed document whose content breaks a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cg2a
