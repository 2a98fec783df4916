// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance                 all criteria
//   acceptance --criterion 9   one criterion; exit status 0 iff it passes

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dirichlet/divisor.hpp"
#include "dirichlet/exact_poly.hpp"
#include "dirichlet/inversion.hpp"
#include "dirichlet/kendall.hpp"
#include "oracles.hpp"

using namespace dirichlet;

namespace {

struct Verdict {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const double kLnZeta2 = std::log(std::numbers::pi * std::numbers::pi / 6.0);

struct GridPoint {
  Complex s, w;
};

// 5x5 grid: Re(s) in [sigma + gamma rho, sigma + gamma rho + 1], Im(s) in [-1, 1],
// |w| = rho at 25 equally spaced angles.
std::vector<GridPoint> theorem_grid(const LFunctionContext& ctx, double rho) {
  std::vector<GridPoint> out;
  const double base = ctx.sigma() + ctx.gamma() * rho;
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k)
      out.push_back({Complex(base + j / 4.0, -1.0 + k / 2.0),
                     rho * std::polar(1.0, 2.0 * std::numbers::pi * (5 * j + k) / 25.0)});
  return out;
}

LFunctionContext zeta_ctx() { return make_context(MultiplicativeSpec::all_ones(), 1.4); }
LFunctionContext chi4_ctx() { return make_context(MultiplicativeSpec::chi4(), 1.2); }
SubordinatorModel sim_model() { return build_model(make_context(MultiplicativeSpec::all_ones(), 2.0), 2.0); }

constexpr double kRho = 0.1;
constexpr std::uint64_t kPaths = 1'000'000;
constexpr std::uint64_t kSeed = 1;

Verdict functional_equation() {
  const auto ctx = zeta_ctx();
  double worst = 0.0;
  for (const auto& p : theorem_grid(ctx, kRho)) worst = std::max(worst, verify_functional_equation(ctx, p.s, p.w).residual);
  return {worst < 1e-8, fmt("max |L(s-wf) - e^f| = %.3g over 25 points (gamma = %.12f)", worst, ctx.gamma())};
}

Verdict explicit_series() {
  const double z_values[] = {1.9, 2.0, 2.1};
  double worst = 0.0, spread = 0.0;
  for (Complex v : {Complex(1, 0), Complex(2, 0), Complex(-1, 0), Complex(0, 1)}) {
    const Complex expected = (std::exp(v * kLnZeta2) - 1.0) / v;
    std::vector<Complex> lhs;
    for (double z : z_values) {
      lhs.push_back(explicit_series_demo(v, z).lhs);
      worst = std::max(worst, std::abs(lhs.back() - expected));
    }
    for (std::size_t a = 0; a < lhs.size(); ++a)
      for (std::size_t b = a + 1; b < lhs.size(); ++b) spread = std::max(spread, std::abs(lhs[a] - lhs[b]));
  }
  return {worst < 1e-6 && spread < 1e-6, fmt("max |lhs - closed form| = %.3g, max pairwise spread over z = %.3g", worst, spread)};
}

Verdict oracle_equivalence() {
  double worst_zeta = 0.0, worst_chi = 0.0;
  const auto zeta = zeta_ctx();
  for (const auto& p : theorem_grid(zeta, kRho))
    worst_zeta = std::max(worst_zeta, std::abs(f_eval(zeta, p.s, p.w).value - newton_oracle(zeta, p.s, p.w)));
  const auto chi = chi4_ctx();
  for (const auto& p : theorem_grid(chi, kRho))
    worst_chi = std::max(worst_chi, std::abs(f_eval(chi, p.s, p.w).value - newton_oracle(chi, p.s, p.w)));
  return {worst_zeta < 1e-9 && worst_chi < 1e-9,
          fmt("max |f_eval - newton| zeta %.3g, chi4 (sigma 1.2) %.3g", worst_zeta, worst_chi)};
}

Verdict w_zero_reduction() {
  // ln zeta(s) = sum_{p^k} p^(-ks) / k, summed to 2^30 and compared with the
  // same sum at 2^29.
  const std::vector<double> s{1.5, 2.0, 3.0};
  const auto oracle = oracle::lambda_series(s, std::uint64_t{1} << 30);
  const auto ctx = zeta_ctx();
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double diff = std::abs(f_eval(ctx, s[i], 0.0).value - oracle.full[i]);
    ok = ok && diff < 1e-10;
    detail += fmt("%ss=%g: |f(s,0) - series| = %.3g (series moved %.3g on doubling)", i ? "; " : "", s[i], diff,
                  std::abs(oracle.full[i] - oracle.half[i]));
  }
  return {ok, detail};
}

Verdict semigroup() {
  std::uint64_t bad = 0, bad_classical = 0;
  for (std::uint64_t n = 2; n <= 500; ++n) {
    bad += !semigroup_identity_check(n).ok;
    bad_classical += !classical_convolution_check(n);
  }
  return {bad == 0 && bad_classical == 0,
          fmt("shifted identity fails at %llu of 499 n, classical at %llu (boundary convention %s)",
              static_cast<unsigned long long>(bad), static_cast<unsigned long long>(bad_classical),
              std::string(to_string(resolve_boundary_convention())).c_str())};
}

Verdict divisor_oracle() {
  constexpr std::size_t n_max = 10000;
  std::uint64_t mismatches = 0;
  for (unsigned k = 1; k <= 5; ++k) {
    const auto conv = oracle::divisor_by_convolution(k, n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      const Rational closed = d_exact(Rational(k), factorize(n));
      mismatches += closed.get_den() != 1 || closed.get_num() != mpz_class(static_cast<unsigned long>(conv[n]));
    }
  }
  return {mismatches == 0, fmt("%llu mismatches over k = 1..5, n <= 10^4", static_cast<unsigned long long>(mismatches))};
}

Verdict bound() {
  const auto ctx = zeta_ctx();
  double largest = 0.0;
  for (const auto& p : theorem_grid(ctx, kRho)) largest = std::max(largest, std::abs(f_eval(ctx, p.s, p.w).value));
  oracle::Gen gen(17);
  double worst_excess = -1e300;
  for (int i = 0; i < 25; ++i) {
    const Complex w = gen.complex_in_disk(0.25);
    const Complex s(ctx.sigma() + ctx.gamma() * std::abs(w) + gen.uniform(0.0, 1.0), gen.uniform(-5.0, 5.0));
    const double dominant = f_eval(ctx, s.real(), std::abs(w)).value.real();
    worst_excess = std::max(worst_excess, std::abs(f_eval(ctx, s, w).value) - dominant);
  }
  return {largest < ctx.gamma() && worst_excess <= 0.0,
          fmt("max |f| on grid %.12f < gamma %.12f; max |f(s,w)| - f(Re s,|w|) = %.3g at 25 random points", largest,
              ctx.gamma(), worst_excess)};
}

Verdict corollary() {
  double worst = 0.0;
  for (const auto& ctx : {zeta_ctx(), chi4_ctx()}) {
    const double base = ctx.sigma() + 2.0 * ctx.gamma() * kRho;
    for (int k = 0; k < 10; ++k) {
      const Complex s(base + 0.1 * k, -1.0 + 0.2 * k);
      const Complex w = kRho * std::polar(1.0, 2.0 * std::numbers::pi * k / 10.0);
      worst = std::max(worst, corollary_check(ctx, s, w));
    }
  }
  return {worst < 1e-8, fmt("max residual %.3g over 10 points for zeta and chi4", worst)};
}

std::string fit_detail(const FitSummary& f) {
  return fmt("max |z| %.2f, chi-square %.2f on %d dof, p = %.3g", f.max_abs_z, f.chi_square, f.dof, f.p_value);
}

Verdict marginal(const SimulationOptions& opts = {}) {
  const auto r = marginal_law_check(sim_model(), 1.0, kPaths, kSeed, 64, opts);
  return {r.passed, fit_detail(r.fit) + fmt(", jump-count z %.2f", r.jumps_z)};
}

Verdict passage(const SimulationOptions& opts = {}) {
  const auto r = passage_law_check(sim_model(), 1.0, 0.5, kPaths, kSeed, 10, opts);
  return {r.passed && r.censored_fraction < 1e-3,
          fit_detail(r.fit) + fmt(", censored %.3g, support violations %llu", r.censored_fraction,
                                  static_cast<unsigned long long>(r.support_violations))};
}

// Levels away from {s/c - ln n}.
constexpr double kKendall[2][2] = {{0.537, 1.0}, {1.173, 1.5}};

Verdict kendall() {
  const auto model = sim_model();
  bool ok = true;
  std::string detail;
  for (const auto& [y, t] : kKendall) {
    const auto r = kendall_integral_check(model, y, t, 0.5, kPaths, kSeed);
    ok = ok && r.passed;
    detail += fmt("%s(y,t)=(%g,%g): lhs %.5f, rhs %.5f, z %.2f", detail.empty() ? "" : "; ", y, t, r.lhs, r.rhs, r.z);
  }
  return {ok, detail};
}

Verdict determinism() {
  const auto model = sim_model();
  auto reports = [&](unsigned threads) {
    SimulationOptions opts;
    opts.threads = threads;
    std::string out = to_json(marginal_law_check(model, 1.0, kPaths, kSeed, 64, opts)).dump();
    out += to_json(passage_law_check(model, 1.0, 0.5, kPaths, kSeed, 10, opts)).dump();
    for (const auto& [y, t] : kKendall) out += to_json(kendall_integral_check(model, y, t, 0.5, kPaths, kSeed, opts)).dump();
    return out;
  };
  const std::string reference = reports(1);
  bool same = true;
  for (unsigned threads : {2u, 3u, 8u}) same = same && reports(threads) == reference;
  return {same, fmt("criteria 9-11 reports at 1, 2, 3 and 8 threads: %s (%zu bytes)",
                    same ? "byte-identical" : "differ", reference.size())};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0: no budget
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run one criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "functional equation", 30, functional_equation},
      {2, "explicit series", 30, explicit_series},
      {3, "oracle equivalence", 0, oracle_equivalence},
      {4, "w = 0 reduction", 0, w_zero_reduction},
      {5, "semigroup identity", 60, semigroup},
      {6, "divisor oracle", 0, divisor_oracle},
      {7, "bound |f| < gamma", 0, bound},
      {8, "corollary", 0, corollary},
      {9, "marginal law", 60, [] { return marginal(); }},
      {10, "first-passage law", 120, [] { return passage(); }},
      {11, "Kendall identity", 0, kendall},
      {12, "determinism", 0, determinism},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds >= c.budget_seconds) {
      v.passed = false;
      v.detail += fmt("; over the %.0f s budget", c.budget_seconds);
    }
    std::printf("criterion %d: %s  %s: %s [%.2f s]\n", c.id, v.passed ? "PASS" : "FAIL", c.name, v.detail.c_str(),
                seconds);
    std::fflush(stdout);
    all = all && v.passed;
  }
  return all ? 0 : 1;
}
