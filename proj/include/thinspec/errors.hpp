#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thinspec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input or violated precondition (CLI exit code 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical failure inside an otherwise valid computation (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotEllipticError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotInBandInteriorError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class TooSmallNError : public DomainError {
 public:
  TooSmallNError(long n, long min_n)
      : DomainError("N=" + std::to_string(n) + " is below the admissible threshold; minimum N is " +
                    std::to_string(min_n)),
        min_n_(min_n) {}
  long min_n() const { return min_n_; }

 private:
  long min_n_;
};

class ParseError : public DomainError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DomainError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class PositivityError : public DomainError {
 public:
  PositivityError(std::size_t index, double value)
      : DomainError("off-diagonal entry at index " + std::to_string(index) +
                    " must be positive (got " + std::to_string(value) + ")"),
        index_(index) {}
  // 1-based position in the period.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class DegenerateInputError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EigensolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RetryExhaustedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateFamilyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace thinspec
