#include "dirichlet/lfunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "dirichlet/divisor.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/hurwitz.hpp"
#include "dirichlet/json_io.hpp"

namespace dirichlet {

namespace {

constexpr std::uint64_t kMinTermsPerResidue = 64;
constexpr double kEps = 2.220446049250313e-16;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_half_plane(const LFunctionContext& ctx, Complex s, const char* op) {
  if (s.real() < ctx.sigma()) {
    throw DomainError(std::string(op) + ": Re(s) = " + fmt(s.real()) + " is left of the abscissa sigma = " +
                      fmt(ctx.sigma()));
  }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

// Adds a * n^-(s + h) into `acc` without materializing a temporary jet.
void add_inverse_power(Jet& acc, Complex a, double n, Complex s) {
  const double ln_n = std::log(n);
  Complex term = a * std::exp(-s * ln_n);
  for (std::size_t k = 0; k <= acc.order(); ++k) {
    acc[k] += term;
    term *= -ln_n / static_cast<double>(k + 1);
  }
}

// Euler-Maclaurin integral terms of all residue classes together:
// (1/q) sum_r a_r X_r^(1-u) / (u - 1) with X_r = head + r, u = s + h. Relative
// to X_0 = head this is X_0^(1-u)/q [A/(u-1) - sum_r a_r l_r phi(-(u-1) l_r)],
// l_r = ln(X_r/X_0), phi(z) = (e^z - 1)/z, so classes that cancel (A = 0)
// never form the large pole coefficients.
Jet integral_terms(std::uint64_t q, const std::vector<Complex>& values, Complex s, std::size_t order,
                   std::uint64_t head) {
  const double x0 = static_cast<double>(head);
  Jet scale = Jet::inverse_power(order, x0, s);
  scale *= x0 / static_cast<double>(q);
  Complex total{0.0, 0.0};
  Jet bracket(order);
  for (std::uint64_t r = 1; r <= q; ++r) {
    const Complex a = values[r % q];
    if (a == Complex{0.0, 0.0}) continue;
    total += a;
    const double l = std::log1p(static_cast<double>(r) / x0);
    const Complex z0 = -(s - 1.0) * l;
    // [h^k] phi(z0 - l h) = phi^(k)(z0) (-l)^k / k!, phi^(k)(z) = sum_i z^i / (i! (k + i + 1))
    double lk = 1.0;
    for (std::size_t k = 0; k <= order; ++k) {
      Complex d{0.0, 0.0};
      Complex zi{1.0, 0.0};
      for (std::size_t i = 0; i < 64; ++i) {
        const Complex t = zi / static_cast<double>(k + i + 1);
        d += t;
        if (std::abs(t) <= 1e-18 * std::abs(d)) break;
        zi *= z0 / static_cast<double>(i + 1);
      }
      bracket[k] -= a * l * d * lk;
      lk *= -l / static_cast<double>(k + 1);
    }
  }
  if (total != Complex{0.0, 0.0}) {
    Jet pole = Jet(order, 1.0) / (Jet::variable(order, s) - Jet(order, 1.0));
    bracket.add_scaled(pole, total);
  }
  return scale * bracket;
}

// sum_n values[n mod q] n^-(s + h): explicit head over n <= q*M, then one
// Euler-Maclaurin tail per residue class.
SeriesJet periodic_series(std::uint64_t q, const std::vector<Complex>& values, Complex s, std::size_t order,
                          std::uint64_t head_terms) {
  const std::uint64_t per_class = std::max<std::uint64_t>(kMinTermsPerResidue, (head_terms + q - 1) / q);
  const std::uint64_t head = q * per_class;
  Jet sum(order);
  for (std::uint64_t n = 1; n <= head; ++n) {
    const Complex a = values[n % q];
    if (a != Complex{0.0, 0.0}) add_inverse_power(sum, a, static_cast<double>(n), s);
  }
  double remainder = 0.0;
  const Jet q_pow = Jet::inverse_power(order, static_cast<double>(q), s);
  for (std::uint64_t r = 1; r <= q; ++r) {
    const Complex a = values[r % q];
    if (a == Complex{0.0, 0.0}) continue;
    const double x = static_cast<double>(per_class) + static_cast<double>(r) / static_cast<double>(q);
    TailJet tail = hurwitz_tail(order, s, x, 10, false);
    sum.add_scaled(q_pow * tail.value, a);
    remainder += std::abs(a) * std::abs(q_pow[0]) * tail.remainder;
  }
  sum += integral_terms(q, values, s, order, head);
  return {std::move(sum), head, remainder};
}

// -log(1 - a p^-(s + h)), principal branch; |a p^-s| < 1 is a precondition.
Jet euler_factor_log(Complex a, std::uint64_t p, Complex s, std::size_t order) {
  Jet factor = Jet::inverse_power(order, static_cast<double>(p), s);
  factor *= -a;
  factor[0] += 1.0;
  Jet out = log(factor);
  out *= -1.0;
  return out;
}

Jet euler_factor(Complex a, std::uint64_t p, Complex s, std::size_t order) {
  Jet factor = Jet::inverse_power(order, static_cast<double>(p), s);
  factor *= -a;
  factor[0] += 1.0;
  return factor;
}

double relative_difference(const Jet& a, const Jet& b) {
  double d = 0.0;
  for (std::size_t k = 0; k <= std::min(a.order(), b.order()); ++k) {
    d = std::max(d, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  }
  return d;
}

const ExplicitPrimes& explicit_kind(const LFunctionContext& ctx) {
  return std::get<ExplicitPrimes>(ctx.spec().kind());
}

SeriesJet explicit_log_series(const LFunctionContext& ctx, Complex s, std::size_t order) {
  Jet sum(order);
  std::uint64_t count = 0;
  for (const auto& [p, a] : explicit_kind(ctx).values) {
    if (a == Complex{0.0, 0.0}) continue;
    sum += euler_factor_log(a, p, s, order);
    ++count;
  }
  return {std::move(sum), std::max<std::uint64_t>(count, 1), kEps * static_cast<double>(count + 1)};
}

// Doubles the head until two successive evaluations agree to tol.
template <typename Eval>
SeriesJet adaptive(const LFunctionContext& ctx, Eval&& eval) {
  std::uint64_t n = ctx.policy().initial_terms;
  SeriesJet prev = eval(n);
  while (true) {
    if (2 * n > ctx.policy().max_terms) throw ConvergenceError("truncation cap reached");
    n *= 2;
    SeriesJet next = eval(n);
    const double diff = relative_difference(prev.jet, next.jet);
    if (diff <= ctx.tol()) {
      next.tail_estimate += diff * std::max(1.0, std::abs(next.jet[0]));
      return next;
    }
    prev = std::move(next);
  }
}

SeriesJet periodic_log_series(const LFunctionContext& ctx, const MultiplicativeSpec::Periodic& per, Complex s,
                              std::size_t order, std::uint64_t head_terms) {
  // Primes up to the head are summed through their Euler factors; what is left
  // is ln R with R = L * prod_{p <= P} (1 - a(p) p^-s) = 1 + (terms over n with
  // all prime factors above P). The principal log of R is the right branch as
  // long as |ln R| <= gamma - gamma_P stays below pi.
  std::uint64_t n = head_terms;
  while (true) {
    const auto primes = primes_up_to(n);
    double gamma_head = 0.0;
    for (std::uint64_t p : primes) {
      const double ap = std::abs((*per.values)[p % per.modulus]);
      gamma_head -= std::log1p(-ap * std::pow(static_cast<double>(p), -ctx.sigma()));
    }
    if (ctx.gamma() - gamma_head < 0.5 * std::numbers::pi) break;
    if (2 * n > ctx.policy().max_terms) throw ConvergenceError("truncation cap reached while isolating the log branch");
    n *= 2;
  }
  SeriesJet l = periodic_series(per.modulus, *per.values, s, order, n);
  Jet head(order);
  Jet reduced = l.jet;
  for (std::uint64_t p : primes_up_to(n)) {
    const Complex a = (*per.values)[p % per.modulus];
    if (a == Complex{0.0, 0.0}) continue;
    head += euler_factor_log(a, p, s, order);
    reduced *= euler_factor(a, p, s, order);
  }
  head += log(reduced);
  const double tail = l.tail_estimate / std::max(std::abs(l.jet[0]), kEps);
  return {std::move(head), l.terms_used, tail};
}

// Direct partial sums. `term(n)` yields the n-th summand at the evaluation point.
template <typename Term>
SeriesValue direct_sum(const LFunctionContext& ctx, Complex s, Term&& term) {
  const double delta = s.real() - ctx.sigma();
  std::uint64_t n = ctx.policy().initial_terms;
  Complex sum{0.0, 0.0};
  for (std::uint64_t k = 1; k <= n; ++k) sum += term(k);
  const double e_gamma = std::exp(ctx.gamma());
  while (true) {
    if (2 * n > ctx.policy().max_terms) throw ConvergenceError("truncation cap reached");
    Complex inc{0.0, 0.0};
    for (std::uint64_t k = n + 1; k <= 2 * n; ++k) inc += term(k);
    sum += inc;
    n *= 2;
    double tail = std::abs(inc);
    if (delta > 0.0) {
      // sum_{k > n} |a(k)| k^-Re(s) <= (n + 1)^-delta * sum_{k > n} |a(k)| k^-sigma
      const double rest = std::max(0.0, e_gamma - ctx.abs_partial_sum(n));
      tail = std::pow(static_cast<double>(n + 1), -delta) * rest;
    }
    if (tail <= ctx.tol() * std::max(1.0, std::abs(sum))) return {sum, n, tail, true};
  }
}

}  // namespace

nlohmann::json to_json(const SeriesValue& v) {
  return {{"value", complex_to_json(v.value)}, {"terms", v.terms_used}, {"tail", v.tail_estimate}};
}

LFunctionContext::LFunctionContext(MultiplicativeSpec spec, double sigma, double tol, TruncationPolicy policy)
    : spec_(std::move(spec)), sigma_(sigma), tol_(tol), policy_(policy) {
  if (!(tol > 0.0)) throw DomainError("make_context: tol must be positive");
  if (!std::isfinite(sigma)) throw DomainError("make_context: sigma must be finite");
  const std::string failure = "series not absolutely convergent at sigma = " + fmt(sigma);

  if (auto per = spec_.periodic()) {
    // Increments of the partial sums over dyadic blocks must shrink.
    double prev_inc = -1.0;
    for (std::uint64_t n = 1u << 10; n < (1u << 16); n *= 2) {
      double inc = 0.0;
      for (std::uint64_t k = n + 1; k <= 2 * n; ++k) {
        inc += std::abs((*per->values)[k % per->modulus]) * std::pow(static_cast<double>(k), -sigma);
      }
      if (prev_inc >= 0.0 && inc >= prev_inc * (1.0 - 1e-9)) throw ConvergenceError(failure);
      prev_inc = inc;
    }
    if (sigma <= 1.0) throw ConvergenceError(failure);
    std::vector<Complex> abs_values(per->values->size());
    std::transform(per->values->begin(), per->values->end(), abs_values.begin(),
                   [](Complex a) { return Complex{std::abs(a), 0.0}; });
    const SeriesJet total = adaptive(*this, [&](std::uint64_t n) {
      return periodic_series(per->modulus, abs_values, Complex{sigma, 0.0}, 0, n);
    });
    gamma_ = std::log(total.jet[0].real());
  } else {
    double g = 0.0;
    for (const auto& [p, a] : std::get<ExplicitPrimes>(spec_.kind()).values) {
      const double x = std::abs(a) * std::pow(static_cast<double>(p), -sigma);
      if (x >= 1.0) throw ConvergenceError(failure);
      g -= std::log1p(-x);
    }
    gamma_ = g;
  }
}

double LFunctionContext::abs_partial_sum(std::uint64_t n_max) const {
  double sum = 0.0;
  if (auto per = spec_.periodic()) {
    for (std::uint64_t k = 1; k <= n_max; ++k) {
      sum += std::abs((*per->values)[k % per->modulus]) * std::pow(static_cast<double>(k), -sigma_);
    }
    return sum;
  }
  const FactorTable table(static_cast<std::uint32_t>(n_max));
  for (std::uint32_t k = 1; k <= n_max; ++k) {
    double a = 1.0;
    table.for_each_prime_power(k, [&](std::uint32_t p, unsigned j) { a *= std::pow(std::abs(spec_.at_prime(p)), j); });
    if (a != 0.0) sum += a * std::pow(static_cast<double>(k), -sigma_);
  }
  return sum;
}

LFunctionContext make_context(const MultiplicativeSpec& spec, double sigma, double tol) {
  return LFunctionContext(spec, sigma, tol);
}

SeriesJet L_taylor(const LFunctionContext& ctx, Complex s, std::size_t order) {
  require_half_plane(ctx, s, "L_eval");
  if (auto per = ctx.spec().periodic()) {
    return adaptive(ctx, [&](std::uint64_t n) { return periodic_series(per->modulus, *per->values, s, order, n); });
  }
  SeriesJet logs = explicit_log_series(ctx, s, order);
  Jet value = exp(logs.jet);
  return {std::move(value), logs.terms_used, logs.tail_estimate * std::abs(std::exp(logs.jet[0]))};
}

SeriesJet ln_L_taylor(const LFunctionContext& ctx, Complex s, std::size_t order) {
  require_half_plane(ctx, s, "ln_L");
  if (auto per = ctx.spec().periodic()) {
    SeriesJet constant = adaptive(ctx, [&](std::uint64_t n) { return periodic_log_series(ctx, *per, s, 0, n); });
    if (order == 0) return constant;
    // Only the constant depends on the branch; the higher coefficients follow
    // from L'/L, so they are read off the log of the L jet.
    SeriesJet l = L_taylor(ctx, s, order);
    Jet out = log(l.jet);
    out[0] = constant.jet[0];
    const double tail = constant.tail_estimate + l.tail_estimate / std::max(std::abs(l.jet[0]), kEps);
    return {std::move(out), std::max(constant.terms_used, l.terms_used), tail};
  }
  return explicit_log_series(ctx, s, order);
}

SeriesValue L_eval(const LFunctionContext& ctx, Complex s, Summation mode) {
  require_half_plane(ctx, s, "L_eval");
  if (mode == Summation::accelerated) {
    SeriesJet j = L_taylor(ctx, s, 0);
    return {j.jet[0], j.terms_used, j.tail_estimate, true};
  }
  if (auto per = ctx.spec().periodic()) {
    return direct_sum(ctx, s, [&](std::uint64_t n) {
      const Complex a = (*per->values)[n % per->modulus];
      return a == Complex{0.0, 0.0} ? a : a * std::exp(-s * std::log(static_cast<double>(n)));
    });
  }
  const FactorTable table(static_cast<std::uint32_t>(ctx.policy().max_terms));
  return direct_sum(ctx, s, [&](std::uint64_t n) {
    Complex a{1.0, 0.0};
    table.for_each_prime_power(static_cast<std::uint32_t>(n), [&](std::uint32_t p, unsigned j) {
      a *= std::pow(ctx.spec().at_prime(p), static_cast<int>(j));
    });
    return a == Complex{0.0, 0.0} ? a : a * std::exp(-s * std::log(static_cast<double>(n)));
  });
}

SeriesValue ln_L(const LFunctionContext& ctx, Complex s, Summation mode) {
  require_half_plane(ctx, s, "ln_L");
  if (mode == Summation::accelerated) {
    SeriesJet j = ln_L_taylor(ctx, s, 0);
    return {j.jet[0], j.terms_used, j.tail_estimate, true};
  }
  // Lambda(n) / ln(n) = 1/k on n = p^k and 0 elsewhere.
  const FactorTable table(static_cast<std::uint32_t>(ctx.policy().max_terms));
  return direct_sum(ctx, s, [&](std::uint64_t n) -> Complex {
    if (n < 2) return {0.0, 0.0};
    const std::uint32_t p = table.smallest_factor(static_cast<std::uint32_t>(n));
    std::uint64_t m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m != 1) return {0.0, 0.0};
    const Complex a = std::pow(ctx.spec().at_prime(p), k);
    return a * std::exp(-s * std::log(static_cast<double>(n))) / static_cast<double>(k);
  });
}

std::vector<Complex> L_power_coefficients(const LFunctionContext& ctx, Complex t, std::size_t n_max) {
  if (n_max < 1) throw DomainError("L_power_coefficients: N must be at least 1");
  const FactorTable table(static_cast<std::uint32_t>(n_max));
  std::vector<Complex> out;
  out.reserve(n_max);
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const PrimeFactorization f = table.factorize(n);
    out.push_back(d(t, f) * coefficient(ctx.spec(), f));
  }
  return out;
}

}  // namespace dirichlet
