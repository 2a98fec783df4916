#include "dirichlet/exact_poly.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dirichlet/divisor.hpp"
#include "dirichlet/errors.hpp"

namespace dirichlet {

RationalPolynomial::RationalPolynomial(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {}

RationalPolynomial RationalPolynomial::constant(std::vector<std::string> symbols, const Rational& c) {
  RationalPolynomial p(std::move(symbols));
  p.add_term(Monomial(p.symbols_.size(), 0), c);
  return p;
}

RationalPolynomial RationalPolynomial::variable(std::vector<std::string> symbols, std::size_t index) {
  RationalPolynomial p(std::move(symbols));
  if (index >= p.symbols_.size()) throw std::out_of_range("RationalPolynomial: symbol index");
  Monomial m(p.symbols_.size(), 0);
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

void RationalPolynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void RationalPolynomial::require_same_ring(const RationalPolynomial& o) const {
  if (symbols_ != o.symbols_) throw std::invalid_argument("RationalPolynomial: mismatched symbol tables");
}

std::size_t RationalPolynomial::total_degree() const {
  std::size_t deg = 0;
  for (const auto& [m, c] : terms_) {
    std::size_t d = 0;
    for (auto e : m) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  require_same_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  require_same_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  a.require_same_ring(b);
  RationalPolynomial out(a.symbols_);
  RationalPolynomial::Monomial m(a.symbols_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
  return a.symbols_ == b.symbols_ && a.terms_ == b.terms_;
}

Rational RationalPolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != symbols_.size()) throw std::invalid_argument("RationalPolynomial: point dimension");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) term *= point[i];
    sum += term;
  }
  return sum;
}

double RationalPolynomial::evaluate(std::span<const double> point) const {
  if (point.size() != symbols_.size()) throw std::invalid_argument("RationalPolynomial: point dimension");
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) term *= point[i];
    sum += term;
  }
  return sum;
}

RationalPolynomial RationalPolynomial::specialize(std::size_t index, const Rational& value) const {
  if (index >= symbols_.size()) throw std::out_of_range("RationalPolynomial: symbol index");
  RationalPolynomial out(symbols_);
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    for (unsigned e = 0; e < m[index]; ++e) coeff *= value;
    Monomial reduced = m;
    reduced[index] = 0;
    out.add_term(reduced, coeff);
  }
  return out;
}

std::string RationalPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    bool has_var = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (has_var) vars << "*";
      vars << "(" << symbols_[i] << ")";
      if (m[i] > 1) vars << "^" << m[i];
      has_var = true;
    }
    if (!has_var) os << mag.get_str();
    else if (mag == 1) os << vars.str();
    else os << mag.get_str() << "*" << vars.str();
  }
  return os.str();
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw DomainError("divisors: n must be positive");
  std::vector<std::uint64_t> out{1};
  const PrimeFactorization f = factorize(n);
  for (const auto& pp : f.factors()) {
    const std::size_t base = out.size();
    std::uint64_t q = 1;
    for (unsigned e = 0; e < pp.exponent; ++e) {
      q *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LogPrimeRing::LogPrimeRing(std::uint64_t n) : n_(n), symbols_{"t", "s"} {
  const PrimeFactorization f = factorize(n);
  for (const auto& pp : f.factors()) {
    primes_.push_back(pp.prime);
    symbols_.push_back("w*ln" + std::to_string(pp.prime));
  }
}

std::size_t LogPrimeRing::log_symbol(std::uint64_t p) const {
  auto it = std::find(primes_.begin(), primes_.end(), p);
  if (it == primes_.end()) throw DomainError("LogPrimeRing: prime " + std::to_string(p) + " does not divide n");
  return 2 + static_cast<std::size_t>(it - primes_.begin());
}

RationalPolynomial LogPrimeRing::w_log(std::uint64_t m) const {
  if (m == 0 || n_ % m != 0) throw DomainError("LogPrimeRing: argument must divide n");
  RationalPolynomial out = zero();
  const PrimeFactorization f = factorize(m);
  for (const auto& pp : f.factors()) out += var(log_symbol(pp.prime)) * Rational(pp.exponent);
  return out;
}

RationalPolynomial d_tilde_shifted(std::uint64_t n, std::size_t var, std::uint64_t log_argument,
                                   const LogPrimeRing& ring) {
  const DivisorPolynomial poly = d_tilde_polynomial(n);
  const RationalPolynomial z = ring.var(var) + ring.w_log(log_argument);
  const auto& c = poly.coefficients();
  RationalPolynomial acc = ring.zero();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z;
    acc += ring.one() * *it;
  }
  return acc;
}

std::string_view to_string(BoundaryConvention c) {
  switch (c) {
    case BoundaryConvention::reciprocal: return "reciprocal";
    case BoundaryConvention::omitted: return "omitted";
    case BoundaryConvention::unit: return "unit";
  }
  return "unknown";
}

namespace {

// t * s * d~_{t + w ln 1}(1) * X under each convention, where X is the factor
// carried by the other side of the split.
RationalPolynomial boundary_factor(const LogPrimeRing& ring, std::size_t own_var, std::size_t other_var,
                                   BoundaryConvention convention) {
  switch (convention) {
    case BoundaryConvention::reciprocal: return ring.var(other_var);
    case BoundaryConvention::omitted: return ring.zero();
    case BoundaryConvention::unit: return ring.var(own_var) * ring.var(other_var);
  }
  return ring.zero();
}

}  // namespace

SemigroupSides semigroup_sides(std::uint64_t n, BoundaryConvention convention) {
  if (n < 2) throw DomainError("semigroup identity requires n >= 2");
  const LogPrimeRing ring(n);
  const auto t = LogPrimeRing::kT;
  const auto s = LogPrimeRing::kS;

  // (t + s) d~_{t + s + w ln n}(n): substitute z = t + s + w ln n.
  const DivisorPolynomial poly = d_tilde_polynomial(n);
  const RationalPolynomial z = ring.var(t) + ring.var(s) + ring.w_log(n);
  RationalPolynomial dz = ring.zero();
  for (auto it = poly.coefficients().rbegin(); it != poly.coefficients().rend(); ++it) {
    dz = dz * z;
    dz += ring.one() * *it;
  }
  RationalPolynomial lhs = (ring.var(t) + ring.var(s)) * dz;

  RationalPolynomial rhs = ring.zero();
  const RationalPolynomial ts = ring.var(t) * ring.var(s);
  for (std::uint64_t k : divisors(n)) {
    const std::uint64_t m = n / k;
    if (k == 1) {
      rhs += boundary_factor(ring, t, s, convention) * d_tilde_shifted(n, s, n, ring);
    } else if (m == 1) {
      rhs += boundary_factor(ring, s, t, convention) * d_tilde_shifted(n, t, n, ring);
    } else {
      rhs += ts * d_tilde_shifted(k, t, k, ring) * d_tilde_shifted(m, s, m, ring);
    }
  }
  return {std::move(lhs), std::move(rhs)};
}

BoundaryConvention resolve_boundary_convention(std::uint64_t probe_limit) {
  static std::mutex mu;
  static std::map<std::uint64_t, BoundaryConvention> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(probe_limit); it != cache.end()) return it->second;

  for (auto c : {BoundaryConvention::reciprocal, BoundaryConvention::omitted, BoundaryConvention::unit}) {
    bool holds = true;
    for (std::uint64_t n = 2; n <= probe_limit && holds; ++n) {
      auto sides = semigroup_sides(n, c);
      holds = sides.lhs == sides.rhs;
    }
    if (holds) {
      cache.emplace(probe_limit, c);
      return c;
    }
  }
  throw ConvergenceError("no boundary convention makes the semigroup identity exact");
}

nlohmann::json to_json(const SemigroupReport& r) {
  return {{"n", r.n},
          {"ok", r.ok},
          {"convention", std::string(to_string(r.convention))},
          {"max_degree", r.max_degree},
          {"num_terms", r.num_terms}};
}

SemigroupReport semigroup_identity_check(std::uint64_t n) {
  const BoundaryConvention c = resolve_boundary_convention();
  const auto sides = semigroup_sides(n, c);
  return {n, sides.lhs == sides.rhs, c, sides.lhs.total_degree(), sides.lhs.size()};
}

RationalPolynomial d_polynomial(std::uint64_t n, std::size_t var, const std::vector<std::string>& symbols) {
  if (n == 0) throw DomainError("d_polynomial: n must be positive");
  if (n == 1) return RationalPolynomial::constant(symbols, 1);
  const DivisorPolynomial poly = d_tilde_polynomial(n);
  const RationalPolynomial z = RationalPolynomial::variable(symbols, var);
  RationalPolynomial acc(symbols);
  for (auto it = poly.coefficients().rbegin(); it != poly.coefficients().rend(); ++it) {
    acc = acc * z;
    acc += RationalPolynomial::constant(symbols, *it);
  }
  return acc * z;
}

bool classical_convolution_check(std::uint64_t n, int trials) {
  const std::vector<std::string> symbols{"t", "s"};
  const RationalPolynomial t = RationalPolynomial::variable(symbols, 0);
  const RationalPolynomial s = RationalPolynomial::variable(symbols, 1);

  // d_{t+s}(n): substitute z = t + s into d_z(n).
  RationalPolynomial lhs = RationalPolynomial::constant(symbols, 1);
  if (n > 1) {
    const DivisorPolynomial poly = d_tilde_polynomial(n);
    lhs = RationalPolynomial(symbols);
    for (auto it = poly.coefficients().rbegin(); it != poly.coefficients().rend(); ++it) {
      lhs = lhs * (t + s);
      lhs += RationalPolynomial::constant(symbols, *it);
    }
    lhs = lhs * (t + s);
  }

  RationalPolynomial rhs(symbols);
  for (std::uint64_t k : divisors(n)) rhs += d_polynomial(k, 0, symbols) * d_polynomial(n / k, 1, symbols);
  if (!(lhs == rhs)) return false;

  std::mt19937_64 gen(n);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 17);
  const auto fn = factorize(n);
  for (int i = 0; i < trials; ++i) {
    Rational point[2];
    for (auto& v : point) {
      v = Rational(num(gen), den(gen));
      v.canonicalize();
    }
    if (lhs.evaluate(std::span<const Rational>(point)) != d_exact(point[0] + point[1], fn)) return false;
  }
  return true;
}

}  // namespace dirichlet
