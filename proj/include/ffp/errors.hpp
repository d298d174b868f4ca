#pragma once

#include <stdexcept>
#include <string>

namespace ffp {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 2; }
};

/// Malformed input, violated precondition or hypothesis (exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A brute-force enumeration would exceed its configured size cap (exit code 3).
class CapExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// The requested working precision cannot resolve the cancellation in a sum (exit code 3).
class PrecisionInfeasible : public Error {
 public:
  PrecisionInfeasible(const std::string& what, double required_digits)
      : Error(what), required_digits_(required_digits) {}
  int exit_code() const noexcept override { return 3; }
  double required_digits() const noexcept { return required_digits_; }

 private:
  double required_digits_;
};

/// An iterative solver ran out of iterations (exit code 4).
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  int exit_code() const noexcept override { return 4; }
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace ffp
