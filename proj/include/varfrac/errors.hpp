#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace varfrac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed expression source; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Expression evaluation hit a domain violation or a non-finite value.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Problem definition violates its schema; `key()` names the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string key, const std::string& what)
      : Error("'" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Nonlinear solve failed; reports where it stopped.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int iteration, double residual_norm)
      : Error(what), iteration_(iteration), residual_norm_(residual_norm) {}

  int iteration() const noexcept { return iteration_; }
  double residual_norm() const noexcept { return residual_norm_; }

 private:
  int iteration_;
  double residual_norm_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace varfrac
