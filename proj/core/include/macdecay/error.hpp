#pragma once

#include <stdexcept>
#include <string>

namespace macdecay {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Exact division was requested but the divisor does not divide the dividend.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Machine-integer fast path overflowed; callers fall back to the exact path.
class ArithmeticOverflow : public Error {
 public:
  ArithmeticOverflow() : Error("int64 overflow in fast arithmetic") {}
};

/// An exhaustive search would exceed the configured codeword budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed user configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace macdecay
