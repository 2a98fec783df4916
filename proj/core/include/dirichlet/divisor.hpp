#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "dirichlet/primes.hpp"

namespace dirichlet {

using Complex = std::complex<double>;
using Rational = mpq_class;

/// General divisor function d_z(n) = prod over p^j || n of binom(j + z - 1, j).
///
/// Each binomial is the finite product prod_{i=1..j} (z + i - 1) / i, so no
/// gamma functions are involved and any complex z is allowed.
Complex d(Complex z, std::uint64_t n);
Complex d(Complex z, const PrimeFactorization& f);

/// d_z(n) / z with the removable singularity at z = 0 cancelled exactly.
///
/// One factor of z is taken out of every prime's binomial product, leaving
/// z^(omega(n) - 1) times a product that is regular at 0. Throws DomainError
/// for n < 2.
Complex d_tilde(Complex z, std::uint64_t n);
Complex d_tilde(Complex z, const PrimeFactorization& f);

/// Exact d_z(n) for rational z.
Rational d_exact(const Rational& z, const PrimeFactorization& f);

/// Coefficients of z -> d~_z(n), lowest degree first. Degree is Omega(n) - 1.
class DivisorPolynomial {
 public:
  explicit DivisorPolynomial(std::vector<Rational> coefficients);

  const std::vector<Rational>& coefficients() const noexcept { return coefficients_; }
  std::size_t degree() const noexcept { return coefficients_.size() - 1; }

  Complex operator()(Complex z) const;
  Rational operator()(const Rational& z) const;

 private:
  std::vector<Rational> coefficients_;
};

/// Throws DomainError for n < 2.
DivisorPolynomial d_tilde_polynomial(std::uint64_t n);
DivisorPolynomial d_tilde_polynomial(const PrimeFactorization& f);

/// Lambda(n) = ln p when n = p^k, otherwise 0.
double von_mangoldt(std::uint64_t n);
double von_mangoldt(const PrimeFactorization& f);

}  // namespace dirichlet
