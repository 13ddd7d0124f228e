#pragma once

#include <stdexcept>
#include <string>

namespace mfpm {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: files, ring/character specs, flags.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column)
      : InputError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An operator needs more q-expansion coefficients than are available.
class TruncationError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Operands live in coefficient rings that cannot be compared.
class RingMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfpm
