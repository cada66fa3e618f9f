#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tolift {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. `position` is a 0-based character offset for
// term syntax, or a 1-based line number for file formats (see `where`).
class ParseError : public Error {
 public:
  ParseError(std::string const& message, std::size_t position,
             std::string where = "position")
      : Error(where + " " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ArityMismatch : public ParseError {
 public:
  ArityMismatch(std::string op, std::size_t expected, std::size_t got,
                std::size_t position)
      : ParseError("arity mismatch for '" + op + "': expected "
                       + std::to_string(expected) + " argument(s), got "
                       + std::to_string(got),
                   position),
        op_(std::move(op)),
        expected_(expected),
        got_(got) {}

  std::string const& op() const noexcept { return op_; }
  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::string op_;
  std::size_t expected_;
  std::size_t got_;
};

// A configurable size guard refused the computation.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Operands live on universes (or signatures) that do not fit together.
class SizeMismatch : public Error {
 public:
  using Error::Error;
};

// An element index outside {0,...,n-1}.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Unassigned variable or unknown operation during term evaluation.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class NotATolerance : public Error {
 public:
  using Error::Error;
};

class NotACongruence : public Error {
 public:
  using Error::Error;
};

// A claimed lift whose parts do not fit the base algebra or each other.
class StructuralMismatch : public Error {
 public:
  using Error::Error;
};

// An internal invariant of a construction failed to hold.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace tolift
