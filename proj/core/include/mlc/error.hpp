#pragma once

#include <stdexcept>
#include <string>

namespace mlc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (bad alpha, |z| >= 1
/// on the resolvent branch, gamma * rho >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A result is not representable in double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An iterative method hit its iteration cap without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The principal matrix logarithm (or square root) does not exist.
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Singular linear system.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Rank correlation of a constant vector.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or stream.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mlc
