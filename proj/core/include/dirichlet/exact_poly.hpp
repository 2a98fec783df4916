#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "dirichlet/primes.hpp"

namespace dirichlet {

using Rational = mpq_class;

/// Multivariate polynomial over Q. A monomial is its exponent vector, one
/// entry per symbol; zero coefficients are never stored.
class RationalPolynomial {
 public:
  using Monomial = std::vector<std::uint16_t>;

  explicit RationalPolynomial(std::vector<std::string> symbols);

  static RationalPolynomial constant(std::vector<std::string> symbols, const Rational& c);
  static RationalPolynomial variable(std::vector<std::string> symbols, std::size_t index);

  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t total_degree() const;

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const Rational& c);
  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& c) { return a *= c; }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b);

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;
  /// Sets symbol `index` to `value` and keeps the symbol table.
  RationalPolynomial specialize(std::size_t index, const Rational& value) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  void require_same_ring(const RationalPolynomial& o) const;

  std::vector<std::string> symbols_;
  std::map<Monomial, Rational> terms_;
};

/// Polynomial ring Q[t, s, w ln p_1, ..., w ln p_m] over the primes dividing n.
/// Since ln n = sum_p e_p ln p and the ln p are linearly independent over Q,
/// w ln(k) for every divisor k of n is an exact linear form in these symbols.
class LogPrimeRing {
 public:
  static constexpr std::size_t kT = 0;
  static constexpr std::size_t kS = 1;

  explicit LogPrimeRing(std::uint64_t n);

  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  /// Index of the symbol w ln p.
  std::size_t log_symbol(std::uint64_t p) const;
  /// w ln(m) as a linear polynomial; m must divide n.
  RationalPolynomial w_log(std::uint64_t m) const;
  RationalPolynomial zero() const { return RationalPolynomial(symbols_); }
  RationalPolynomial one() const { return RationalPolynomial::constant(symbols_, 1); }
  RationalPolynomial var(std::size_t index) const { return RationalPolynomial::variable(symbols_, index); }

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::string> symbols_;
};

/// d~_{var + w ln(log_argument)}(n) in the ring of `ring`. n >= 2.
RationalPolynomial d_tilde_shifted(std::uint64_t n, std::size_t var, std::uint64_t log_argument,
                                   const LogPrimeRing& ring);

/// How the divisor sum treats k = 1 and k = n, where d~ would be applied to 1.
enum class BoundaryConvention {
  /// d~_t(1) := 1/t, from d_t(1) = 1; the k = 1 term becomes s d~_{s + w ln n}(n).
  reciprocal,
  /// Boundary terms dropped.
  omitted,
  /// d~_t(1) := 1.
  unit,
};

std::string_view to_string(BoundaryConvention c);

/// Both sides of (t+s) d~_{t+s+w ln n}(n) = ts sum_{k|n} d~_{t+w ln k}(k) d~_{s+w ln(n/k)}(n/k).
struct SemigroupSides {
  RationalPolynomial lhs;
  RationalPolynomial rhs;
};

SemigroupSides semigroup_sides(std::uint64_t n, BoundaryConvention convention);

/// The first convention under which the identity holds exactly for every
/// 2 <= n <= probe_limit. Determined once and cached.
BoundaryConvention resolve_boundary_convention(std::uint64_t probe_limit = 30);

struct SemigroupReport {
  std::uint64_t n;
  bool ok;
  BoundaryConvention convention;
  std::size_t max_degree;
  std::size_t num_terms;
};

nlohmann::json to_json(const SemigroupReport& r);

/// Exact coefficient-wise check of the identity for one n, using the resolved convention.
SemigroupReport semigroup_identity_check(std::uint64_t n);

/// d_z(n) as a polynomial in symbol `var` of a two-symbol ring (t, s).
RationalPolynomial d_polynomial(std::uint64_t n, std::size_t var, const std::vector<std::string>& symbols);

/// Exact check of d_{t+s}(n) = sum_{k|n} d_t(k) d_s(n/k) in Q[t, s]. `trials`
/// extra random rational points are evaluated against the closed-form product
/// to guard the polynomial construction itself.
bool classical_convolution_check(std::uint64_t n, int trials = 0);

/// Divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace dirichlet
