#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cutpoint {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument of sqrt/arccos outside its domain, or not certifiably inside it.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A certified decision could not be reached within the precision budget.
/// `values_equal()` is set when the quantities are provably identical
/// (exact arithmetic), which is the strict-cutpoint boundary case.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, bool values_equal)
      : Error(what), values_equal_(values_equal) {}
  bool values_equal() const { return values_equal_; }

 private:
  bool values_equal_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the range a construction is defined on.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid automaton (non-stochastic, non-unitary, bad indices).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class SymbolError : public Error {
 public:
  using Error::Error;
};

class DigitBudgetExhausted : public Error {
 public:
  using Error::Error;
};

class ScanBudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Text input rejected by a parser; carries a 1-based location.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}
  /// The message without its location prefix.
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cutpoint
