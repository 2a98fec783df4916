#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirichlet/jet.hpp"
#include "dirichlet/multiplicative.hpp"

namespace dirichlet {

/// A truncated-series result: the value, how many terms went into it and an
/// estimate of what the truncation left out.
struct SeriesValue {
  Complex value;
  std::uint64_t terms_used = 1;
  double tail_estimate = 0.0;
  /// False when the point lies outside the region where convergence is proven.
  bool guaranteed = true;
};

nlohmann::json to_json(const SeriesValue& v);

/// Taylor data of a series around a base point.
struct SeriesJet {
  Jet jet;
  std::uint64_t terms_used;
  double tail_estimate;
};

/// {(s, w) : Re(s) >= sigma0, |w| <= rho}
struct DomainSpec {
  double sigma0;
  double rho;

  bool contains(Complex s, Complex w) const noexcept { return s.real() >= sigma0 && std::abs(w) <= rho; }
};

enum class Summation {
  /// Explicit head of the series plus a closed-form tail (Euler-Maclaurin per
  /// residue class, or the finite Euler product for explicit primes).
  accelerated,
  /// Plain partial sums with doubling truncation; slow near the abscissa.
  direct,
};

struct TruncationPolicy {
  std::uint64_t initial_terms = 1u << 10;
  std::uint64_t max_terms = 1u << 24;
};

/// An L-function given by a completely multiplicative spec and an abscissa of
/// absolute convergence sigma. Immutable once built.
class LFunctionContext {
 public:
  /// Runs the convergence self-check and computes gamma. Throws
  /// ConvergenceError when sum |a(n)| n^-sigma does not converge.
  LFunctionContext(MultiplicativeSpec spec, double sigma, double tol, TruncationPolicy policy = {});

  const MultiplicativeSpec& spec() const noexcept { return spec_; }
  double sigma() const noexcept { return sigma_; }
  /// ln sum |a(n)| n^-sigma
  double gamma() const noexcept { return gamma_; }
  double tol() const noexcept { return tol_; }
  const TruncationPolicy& policy() const noexcept { return policy_; }

  /// The domain on which the inversion series is proven to converge for a given rho.
  DomainSpec theorem_domain(double rho) const noexcept { return {sigma_ + gamma_ * rho, rho}; }

  /// sum_{n <= N} |a(n)| n^-sigma
  double abs_partial_sum(std::uint64_t n_max) const;

 private:
  MultiplicativeSpec spec_;
  double sigma_;
  double tol_;
  double gamma_ = 0.0;
  TruncationPolicy policy_;
};

LFunctionContext make_context(const MultiplicativeSpec& spec, double sigma, double tol = 1e-13);

/// L(s) = sum a(n) n^-s. Throws DomainError for Re(s) < sigma.
SeriesValue L_eval(const LFunctionContext& ctx, Complex s, Summation mode = Summation::accelerated);

/// ln L(s) as the series sum_{n >= 2} Lambda(n) a(n) / (ln(n) n^s), which fixes
/// the branch (ln L -> 0 as Re s -> infinity).
SeriesValue ln_L(const LFunctionContext& ctx, Complex s, Summation mode = Summation::accelerated);

/// Taylor coefficients of h -> L(s + h) and h -> ln L(s + h) up to `order`.
SeriesJet L_taylor(const LFunctionContext& ctx, Complex s, std::size_t order);
SeriesJet ln_L_taylor(const LFunctionContext& ctx, Complex s, std::size_t order);

/// [d_t(n) a(n)] for n = 1..N, the Dirichlet coefficients of L(s)^t.
std::vector<Complex> L_power_coefficients(const LFunctionContext& ctx, Complex t, std::size_t n_max);

}  // namespace dirichlet
