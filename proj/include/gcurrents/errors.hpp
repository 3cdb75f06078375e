#pragma once

#include <stdexcept>
#include <string>

namespace gcurrents {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (word syntax, file formats).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operands live in free groups of different rank.
class RankMismatch : public Error {
 public:
  RankMismatch(int lhs, int rhs)
      : Error("rank mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariants of its type (currents, languages, leaves).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An iterative numeric routine did not reach its target.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace gcurrents
