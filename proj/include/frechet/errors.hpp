#pragma once

#include <stdexcept>
#include <string>

namespace frechet {

// Root of every error this library throws. Each subclass maps to one failure
// family so callers (and the CLI exit-code taxonomy) can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (t <= 0, prob outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested moment does not exist for the given shape.
class InfiniteMomentError : public Error {
 public:
  using Error::Error;
};

// Sample carries no information about shape (all observations equal).
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

// Estimator has no admissible solution on this sample (MME with no root for
// alpha > 2, LME with alpha <= 1, ...).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown: failed bracket, singular matrix, zero-variance chain.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Malformed or invalid input data. `line` is 1-based, 0 when unknown.
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace frechet
