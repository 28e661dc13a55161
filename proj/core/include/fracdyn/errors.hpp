#pragma once

#include <stdexcept>
#include <string>

namespace fracdyn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical failures. The CLI maps this branch to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NumericalFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BasisMismatch : public Error {
 public:
  using Error::Error;
};

// Configuration problems. The CLI maps this branch to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& field, const std::string& what)
      : ValidationError(format(line, field, what)), line_(line), field_(field) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(std::size_t line, const std::string& field, const std::string& what) {
    std::string out = "line " + std::to_string(line);
    if (!field.empty()) out += ", field '" + field + "'";
    return out + ": " + what;
  }

  std::size_t line_;
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptySelection : public Error {
 public:
  using Error::Error;
};

}  // namespace fracdyn
