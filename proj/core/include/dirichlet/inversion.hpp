#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirichlet/lfunction.hpp"

namespace dirichlet {

/// Inside D_{sigma + gamma rho, rho} the series is proven to converge; in
/// best-effort mode points outside are summed anyway and flagged.
enum class DomainMode { strict, best_effort };

struct InversionOptions {
  DomainMode domain = DomainMode::strict;
  Summation summation = Summation::accelerated;
  /// Highest power of w kept by the accelerated evaluation.
  std::size_t max_order = 256;
};

struct InversionQuery {
  Complex s;
  Complex w;
  std::optional<Complex> v;
};

/// f(s, w) = sum_{n >= 2} d~_{w ln n}(n) a(n) / n^s.
///
/// Accelerated summation groups the terms by powers of w: expanding
/// d~_{w ln n}(n) as a polynomial in w ln n turns the series into
/// sum_k w^k F_k(s), where each F_k is again a Dirichlet series. Those follow
/// from sum_n d~_z(n) a(n) n^-u = (L(u)^z - 1) / z, which gives
/// F_k(s) = (-1)^k / (k + 1) * [h^k] ln L(s + h)^(k + 1). The regrouping is
/// legitimate wherever the original series converges absolutely.
///
/// In strict mode the point must satisfy Re(s) >= sigma + gamma |w| and the
/// result must obey |f| <= gamma; violations throw DomainError.
SeriesValue f_eval(const LFunctionContext& ctx, Complex s, Complex w, const InversionOptions& opts = {});

struct FunctionalEquationCheck {
  Complex f;
  /// |L(s - w f) - exp(f)|
  double residual;
  std::uint64_t terms;
  double tail;
};

/// Throws DomainError when Re(s - w f) falls left of sigma.
FunctionalEquationCheck verify_functional_equation(const LFunctionContext& ctx, Complex s, Complex w,
                                                   const InversionOptions& opts = {});

struct IdentitySides {
  Complex lhs;
  Complex rhs;
  double tail = 0.0;

  double residual() const { return std::abs(lhs - rhs); }
};

/// lhs = 1 + v sum_{n >= 2} d~_{v + w ln n}(n) a(n) / n^s, rhs = exp(v f(s, w)).
IdentitySides exp_vf_identity(const LFunctionContext& ctx, Complex v, Complex s, Complex w,
                              const InversionOptions& opts = {});

/// sum_{n >= 2} d~_{v + w ln n}(n) a(n) / n^s on its own; equals f(s, w) at v = 0.
SeriesValue shifted_series(const LFunctionContext& ctx, Complex v, Complex s, Complex w,
                           const InversionOptions& opts = {});

/// Solves ln L(s - w g) = g by damped Newton iteration from g = ln L(s). The
/// derivative comes from the differentiated series -sum Lambda(n) a(n) n^-x.
/// Throws NonConvergenceError after max_iter iterations.
Complex newton_oracle(const LFunctionContext& ctx, Complex s, Complex w, double tol = 1e-13, int max_iter = 100);

/// |f(s + w ln L(s), w) - ln L(s)|; requires Re(s) >= sigma + 2 gamma |w|.
double corollary_check(const LFunctionContext& ctx, Complex s, Complex w);

/// Both sides of sum_{n >= 2} d~_{v + w ln n}(n) / n^z = ((pi^2/6)^v - 1) / v
/// with w = (z - 2) / ln(pi^2/6); requires |z - 2| <= 0.13.
IdentitySides explicit_series_demo(Complex v, Complex z, Summation summation = Summation::accelerated);

/// (exp(v x) - 1) / v, continuous at v = 0.
Complex exp_ratio(Complex v, Complex x);

/// One row of a verification report: {s, w, v?, residual, terms, tail}.
struct VerificationRecord {
  InversionQuery query;
  double residual;
  std::uint64_t terms;
  double tail;
};

nlohmann::json to_json(const VerificationRecord& r);

}  // namespace dirichlet
