#pragma once

#include <stdexcept>
#include <string>

namespace arlink {

/// Invalid arguments: out-of-range indices, mismatched shapes or rings,
/// malformed primes.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two pieces of data that must agree on an overlap do not.
class CompatibilityError : public InputError {
 public:
  using InputError::InputError;
};

/// A documented precondition of an operation is violated by otherwise
/// well-formed input.
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

/// Syntax error in a group word, matrix text or presentation file.
/// Line and column are 1-based.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, int line, int column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A bounded search ran out of budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed. Never raised on valid input unless
/// something is wrong with the library itself.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace arlink
