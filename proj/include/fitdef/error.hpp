#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fitdef {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed group data: bad Cayley table, non-bijective generator, size limit.
class GroupError : public Error {
public:
  using Error::Error;
};

/// A precondition of an algebraic operation does not hold (e.g. non-normal input).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A computation would exceed its configured budget.
class BudgetError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fitdef
