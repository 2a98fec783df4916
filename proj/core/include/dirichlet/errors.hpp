#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dirichlet {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series failed its convergence self-check or hit the truncation cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration gave up; carries the last iterate so callers can report it.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::complex<double> last_iterate, double residual)
      : std::runtime_error(what), last_iterate_(last_iterate), residual_(residual) {}

  std::complex<double> last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  std::complex<double> last_iterate_;
  double residual_;
};

/// Malformed specification or configuration input.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dirichlet
