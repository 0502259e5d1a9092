#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsps {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// A likelihood term evaluated to inf or NaN.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, std::size_t index)
      : Error(what + " (observation " + std::to_string(index) + ")"), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Every optimizer start failed.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The observed information matrix cannot be inverted.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// The restricted fit has a larger likelihood than the full fit.
class NestingError : public Error {
 public:
  using Error::Error;
};

/// Fits being compared were computed on different data.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed input record.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace bsps
