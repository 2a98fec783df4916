#include "dirichlet/divisor.hpp"

#include <cmath>

#include "dirichlet/errors.hpp"

namespace dirichlet {

namespace {

// prod_{i=1..j} (z + i - 1) / i
Complex rising_binomial(Complex z, unsigned j) {
  Complex r{1.0, 0.0};
  for (unsigned i = 1; i <= j; ++i) r *= (z + static_cast<double>(i - 1)) / static_cast<double>(i);
  return r;
}

// prod_{i=2..j} (z + i - 1) / i, i.e. the binomial with its z/1 factor removed.
Complex rising_binomial_over_z(Complex z, unsigned j) {
  Complex r{1.0, 0.0};
  for (unsigned i = 2; i <= j; ++i) r *= (z + static_cast<double>(i - 1)) / static_cast<double>(i);
  return r;
}

void require_at_least_two(const PrimeFactorization& f) {
  if (f.empty()) throw DomainError("d_tilde: n must be at least 2");
}

// Multiplies polynomial `poly` (low degree first) by (z + c) / den in place.
void mul_linear(std::vector<Rational>& poly, const Rational& c, const Rational& den) {
  poly.emplace_back(0);
  for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] = (poly[k - 1] + c * poly[k]) / den;
  poly[0] = c * poly[0] / den;
}

}  // namespace

Complex d(Complex z, std::uint64_t n) { return d(z, factorize(n)); }

Complex d(Complex z, const PrimeFactorization& f) {
  Complex r{1.0, 0.0};
  for (const auto& pp : f.factors()) r *= rising_binomial(z, pp.exponent);
  return r;
}

Complex d_tilde(Complex z, std::uint64_t n) {
  if (n < 2) throw DomainError("d_tilde: n must be at least 2");
  return d_tilde(z, factorize(n));
}

Complex d_tilde(Complex z, const PrimeFactorization& f) {
  require_at_least_two(f);
  Complex r{1.0, 0.0};
  for (const auto& pp : f.factors()) r *= rising_binomial_over_z(z, pp.exponent);
  for (unsigned i = 1; i < f.distinct(); ++i) r *= z;
  return r;
}

Rational d_exact(const Rational& z, const PrimeFactorization& f) {
  Rational r = 1;
  for (const auto& pp : f.factors()) {
    for (unsigned i = 1; i <= pp.exponent; ++i) r *= (z + (i - 1)) / Rational(i);
  }
  return r;
}

DivisorPolynomial::DivisorPolynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.emplace_back(0);
}

Complex DivisorPolynomial::operator()(Complex z) const {
  Complex acc{0.0, 0.0};
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

Rational DivisorPolynomial::operator()(const Rational& z) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

DivisorPolynomial d_tilde_polynomial(std::uint64_t n) {
  if (n < 2) throw DomainError("d_tilde_polynomial: n must be at least 2");
  return d_tilde_polynomial(factorize(n));
}

DivisorPolynomial d_tilde_polynomial(const PrimeFactorization& f) {
  require_at_least_two(f);
  std::vector<Rational> poly{Rational(1)};
  for (const auto& pp : f.factors()) {
    for (unsigned i = 2; i <= pp.exponent; ++i) mul_linear(poly, Rational(i - 1), Rational(i));
  }
  // z^(omega - 1)
  for (unsigned i = 1; i < f.distinct(); ++i) mul_linear(poly, Rational(0), Rational(1));
  return DivisorPolynomial(std::move(poly));
}

double von_mangoldt(std::uint64_t n) {
  if (n == 0) throw DomainError("von_mangoldt: n must be positive");
  return von_mangoldt(factorize(n));
}

double von_mangoldt(const PrimeFactorization& f) {
  if (f.distinct() != 1) return 0.0;
  return std::log(static_cast<double>(f.factors()[0].prime));
}

}  // namespace dirichlet
