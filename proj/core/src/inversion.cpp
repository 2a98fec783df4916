#include "dirichlet/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "dirichlet/divisor.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/json_io.hpp"

namespace dirichlet {

namespace {

constexpr std::size_t kInitialOrder = 24;
constexpr std::size_t kConvergenceWindow = 4;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool in_theorem_domain(const LFunctionContext& ctx, Complex s, Complex w) {
  return ctx.theorem_domain(std::abs(w)).contains(s, w);
}

void check_domain(const LFunctionContext& ctx, Complex s, Complex w, const InversionOptions& opts, const char* op) {
  if (opts.domain == DomainMode::strict && !in_theorem_domain(ctx, s, w)) {
    throw DomainError(std::string(op) + ": Re(s) = " + fmt(s.real()) + " is below sigma + gamma |w| = " +
                      fmt(ctx.sigma() + ctx.gamma() * std::abs(w)));
  }
  if (s.real() < ctx.sigma()) {
    throw DomainError(std::string(op) + ": Re(s) = " + fmt(s.real()) + " is left of the abscissa sigma");
  }
}

// phi^(m)(x) for phi(x) = (e^x - 1) / x, i.e. integral_0^1 t^m e^(t x) dt.
Complex phi_derivative(std::size_t m, Complex x) {
  Complex sum{0.0, 0.0};
  Complex power{1.0, 0.0};  // x^i / i!
  for (std::size_t i = 0; i < 2000; ++i) {
    const Complex term = power / static_cast<double>(m + i + 1);
    sum += term;
    if (i > 4 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    power *= x / static_cast<double>(i + 1);
  }
  return sum;
}

struct TermSum {
  Complex value{0.0, 0.0};
  std::size_t order = 0;
  double tail = 0.0;
  bool converged = false;
};

// sum_k (-w)^k [h^k] (l^(k+1) * Phi_k), with Phi_k = phi^(k)(v l) composed
// through the jet l = ln L(s + h). v = 0 reduces to the inversion series.
TermSum grouped_series(const Jet& l, Complex v, Complex w, double tol) {
  const std::size_t order = l.order();
  const bool shifted = v != Complex{0.0, 0.0};

  std::vector<Jet> delta_powers;  // (v (l - l_0))^j / j!
  std::vector<Complex> phi;       // phi^(m)(v l_0)
  if (shifted) {
    Jet delta = l;
    delta[0] = 0.0;
    delta *= v;
    delta_powers.emplace_back(order, 1.0);
    for (std::size_t j = 1; j <= order; ++j) {
      Jet next = delta_powers.back() * delta;
      next *= 1.0 / static_cast<double>(j);
      delta_powers.push_back(std::move(next));
    }
    for (std::size_t m = 0; m <= 2 * order; ++m) phi.push_back(phi_derivative(m, v * l[0]));
  }

  TermSum out;
  Jet power(order, 1.0);
  Complex minus_w_k{1.0, 0.0};
  std::vector<double> magnitudes;
  for (std::size_t k = 0; k <= order; ++k) {
    power *= l;  // l^(k+1)
    Complex coeff;
    if (!shifted) {
      coeff = power[k] / static_cast<double>(k + 1);
    } else {
      // [h^k] l^(k+1) * sum_j phi^(k+j) delta^j / j!; delta^j starts at h^j.
      coeff = 0.0;
      for (std::size_t j = 0; j <= k; ++j) {
        coeff += phi[k + j] * power.product_coefficient(delta_powers[j], k);
      }
    }
    const Complex term = minus_w_k * coeff;
    out.value += term;
    magnitudes.push_back(std::abs(term));
    minus_w_k *= -w;
    if (w == Complex{0.0, 0.0}) {
      out.order = k;
      out.converged = true;
      return out;
    }
  }
  out.order = order;
  const std::size_t n = magnitudes.size();
  double recent = 0.0;
  for (std::size_t i = n - std::min(n, kConvergenceWindow); i < n; ++i) recent = std::max(recent, magnitudes[i]);
  out.tail = 2.0 * recent;
  out.converged = out.tail <= tol * std::max(1.0, std::abs(out.value));
  return out;
}

SeriesValue accelerated_series(const LFunctionContext& ctx, Complex v, Complex s, Complex w,
                               const InversionOptions& opts) {
  for (std::size_t order = kInitialOrder;; order *= 2) {
    order = std::min(order, opts.max_order);
    const SeriesJet l = ln_L_taylor(ctx, s, order);
    const TermSum sum = grouped_series(l.jet, v, w, ctx.tol());
    if (sum.converged) {
      return {sum.value, sum.order + 1, sum.tail + l.tail_estimate, in_theorem_domain(ctx, s, w)};
    }
    if (order >= opts.max_order) throw ConvergenceError("truncation cap reached: series in w did not settle");
  }
}

// Plain partial sums of sum_{n >= 2} d~_{z_n}(n) a(n) n^-s, z_n = v + w ln n.
SeriesValue direct_series(const LFunctionContext& ctx, Complex v, Complex s, Complex w) {
  const auto& policy = ctx.policy();
  const FactorTable table(static_cast<std::uint32_t>(policy.max_terms));
  auto term = [&](std::uint32_t n) -> Complex {
    const PrimeFactorization f = table.factorize(n);
    const Complex a = coefficient(ctx.spec(), f);
    if (a == Complex{0.0, 0.0}) return a;
    const double ln_n = std::log(static_cast<double>(n));
    return d_tilde(v + w * ln_n, f) * a * std::exp(-s * ln_n);
  };
  // Under the domination |d~_t(n)| <= d~_|t|(n) the tail past N is at most
  // (N+1)^-delta times a convergent sum bounded by gamma (v = 0 only).
  const double delta = s.real() - ctx.sigma() - ctx.gamma() * std::abs(w);
  std::uint64_t n = policy.initial_terms;
  Complex sum{0.0, 0.0};
  for (std::uint32_t k = 2; k <= n; ++k) sum += term(k);
  while (true) {
    if (2 * n > policy.max_terms) throw ConvergenceError("truncation cap reached");
    Complex inc{0.0, 0.0};
    for (std::uint64_t k = n + 1; k <= 2 * n; ++k) inc += term(static_cast<std::uint32_t>(k));
    sum += inc;
    n *= 2;
    double tail = std::abs(inc);
    if (v == Complex{0.0, 0.0} && delta > 0.0) {
      tail = std::max(tail, std::pow(static_cast<double>(n + 1), -delta) * ctx.gamma());
    }
    if (tail <= ctx.tol() * std::max(1.0, std::abs(sum))) return {sum, n, tail, in_theorem_domain(ctx, s, w)};
  }
}

SeriesValue evaluate(const LFunctionContext& ctx, Complex v, Complex s, Complex w, const InversionOptions& opts) {
  return opts.summation == Summation::accelerated ? accelerated_series(ctx, v, s, w, opts)
                                                  : direct_series(ctx, v, s, w);
}

}  // namespace

SeriesValue f_eval(const LFunctionContext& ctx, Complex s, Complex w, const InversionOptions& opts) {
  check_domain(ctx, s, w, opts, "f_eval");
  SeriesValue out = evaluate(ctx, Complex{0.0, 0.0}, s, w, opts);
  if (opts.domain == DomainMode::strict) {
    // |f| < gamma inside the domain; on the corner Re(s) = sigma + gamma rho
    // with nonnegative coefficients f reaches gamma, so allow equality up to
    // the error estimate.
    const double slack = out.tail_estimate + 1e-12 * std::max(1.0, ctx.gamma());
    if (std::abs(out.value) > ctx.gamma() + slack) {
      throw DomainError("f_eval: |f| = " + fmt(std::abs(out.value)) + " exceeds gamma = " + fmt(ctx.gamma()));
    }
  }
  return out;
}

FunctionalEquationCheck verify_functional_equation(const LFunctionContext& ctx, Complex s, Complex w,
                                                   const InversionOptions& opts) {
  const SeriesValue f = f_eval(ctx, s, w, opts);
  const Complex arg = s - w * f.value;
  if (arg.real() < ctx.sigma()) {
    throw DomainError("verify_functional_equation: argument left of abscissa, Re(s - w f) = " + fmt(arg.real()));
  }
  const SeriesValue l = L_eval(ctx, arg);
  return {f.value, std::abs(l.value - std::exp(f.value)), f.terms_used, f.tail_estimate + l.tail_estimate};
}

SeriesValue shifted_series(const LFunctionContext& ctx, Complex v, Complex s, Complex w,
                           const InversionOptions& opts) {
  check_domain(ctx, s, w, opts, "shifted_series");
  return evaluate(ctx, v, s, w, opts);
}

IdentitySides exp_vf_identity(const LFunctionContext& ctx, Complex v, Complex s, Complex w,
                              const InversionOptions& opts) {
  check_domain(ctx, s, w, opts, "exp_vf_identity");
  const SeriesValue f = f_eval(ctx, s, w, opts);
  const Complex rhs = std::exp(v * f.value);
  if (v == Complex{0.0, 0.0}) return {Complex{1.0, 0.0}, rhs, 0.0};
  const SeriesValue sum = evaluate(ctx, v, s, w, opts);
  return {1.0 + v * sum.value, rhs, std::abs(v) * sum.tail_estimate + std::abs(v * rhs) * f.tail_estimate};
}

Complex newton_oracle(const LFunctionContext& ctx, Complex s, Complex w, double tol, int max_iter) {
  InversionOptions strict;
  check_domain(ctx, s, w, strict, "newton_oracle");

  auto eval = [&](Complex g) { return ln_L_taylor(ctx, s - w * g, 1).jet; };
  auto admissible = [&](Complex g) { return (s - w * g).real() >= ctx.sigma(); };

  Complex g = ln_L(ctx, s).value;
  Jet l = eval(g);
  Complex residual_g = l[0] - g;
  for (int it = 0; it < max_iter; ++it) {
    const double fe_residual = std::abs(std::exp(l[0]) - std::exp(g));
    if (fe_residual < tol && std::abs(residual_g) < tol) return g;
    const Complex slope = -w * l[1] - 1.0;
    const Complex step = -residual_g / slope;
    // Halve the step until |G| decreases.
    double lambda = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings, lambda *= 0.5) {
      const Complex trial = g + lambda * step;
      if (!admissible(trial)) continue;
      Jet lt = eval(trial);
      const Complex rt = lt[0] - trial;
      if (std::abs(rt) < std::abs(residual_g) || std::abs(rt) < 0.1 * tol) {
        g = trial;
        l = std::move(lt);
        residual_g = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  const double fe_residual = std::abs(std::exp(l[0]) - std::exp(g));
  if (fe_residual < tol && std::abs(residual_g) < tol) return g;
  throw NonConvergenceError("newton_oracle: no convergence after " + std::to_string(max_iter) + " iterations", g,
                            fe_residual);
}

double corollary_check(const LFunctionContext& ctx, Complex s, Complex w) {
  const double bound = ctx.sigma() + 2.0 * ctx.gamma() * std::abs(w);
  if (s.real() < bound) {
    throw DomainError("corollary_check: needs Re(s) >= sigma + 2 gamma |w| = " + fmt(bound) + ", got " +
                      fmt(s.real()));
  }
  const Complex l = ln_L(ctx, s).value;
  const SeriesValue f = f_eval(ctx, s + w * l, w);
  return std::abs(f.value - l);
}

Complex exp_ratio(Complex v, Complex x) {
  const Complex y = v * x;
  if (std::abs(y) < 1e-5) {
    // x (1 + y/2 + y^2/6 + y^3/24)
    return x * (1.0 + y * (0.5 + y * (1.0 / 6.0 + y / 24.0)));
  }
  return (std::exp(y) - 1.0) / v;
}

IdentitySides explicit_series_demo(Complex v, Complex z, Summation summation) {
  if (std::abs(z - 2.0) > 0.13) {
    throw DomainError("explicit_series_demo: z must lie in the disk |z - 2| <= 0.13, got |z - 2| = " +
                      fmt(std::abs(z - 2.0)));
  }
  static const LFunctionContext zeta = make_context(MultiplicativeSpec::all_ones(), 1.4);
  const double ln_zeta2 = std::log(std::numbers::pi * std::numbers::pi / 6.0);
  const Complex w = (z - 2.0) / ln_zeta2;
  InversionOptions opts;
  opts.summation = summation;
  const SeriesValue lhs = shifted_series(zeta, v, z, w, opts);
  return {lhs.value, exp_ratio(v, ln_zeta2), lhs.tail_estimate};
}

nlohmann::json to_json(const VerificationRecord& r) {
  nlohmann::json j{{"s", complex_to_json(r.query.s)}, {"w", complex_to_json(r.query.w)}};
  if (r.query.v) j["v"] = complex_to_json(*r.query.v);
  j["residual"] = r.residual;
  j["terms"] = r.terms;
  j["tail"] = r.tail;
  return j;
}

}  // namespace dirichlet
