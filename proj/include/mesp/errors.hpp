#pragma once

#include <stdexcept>
#include <string>

namespace mesp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input matrix is asymmetric beyond tolerance.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Covariance matrix (or a shifted copy of it) is not positive (semi)definite.
class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// Requested shift t exceeds lambda_min(C).
class ShiftTooLargeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (bad s, empty subset, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Eigensolver or relaxation solver failed.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Subset enumeration would exceed the configured budget.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, double count)
      : Error(what), count_(count) {}
  double count() const { return count_; }

 private:
  double count_;
};

// Lower bound exceeds the upper bound it is compared against.
class InconsistentBoundsError : public Error {
 public:
  using Error::Error;
};

// Malformed matrix file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Invalid run configuration (CLI flags, sweep settings).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mesp
