#include <doctest.h>

#include <numbers>

#include "dirichlet/divisor.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/lfunction.hpp"
#include "oracles.hpp"

using namespace dirichlet;

namespace {
constexpr double kPi2over6 = std::numbers::pi * std::numbers::pi / 6.0;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("gamma for the builtin specs") {
  CHECK(make_context(MultiplicativeSpec::all_ones(), 2.0).gamma() == doctest::Approx(std::log(kPi2over6)).epsilon(1e-13));
  CHECK(make_context(MultiplicativeSpec::chi4(), 2.0).gamma() ==
        doctest::Approx(std::log(std::numbers::pi * std::numbers::pi / 8.0)).epsilon(1e-13));
  // zeta(1.4) from the oracle; gamma = ln of it since the coefficients are nonnegative.
  CHECK(make_context(MultiplicativeSpec::all_ones(), 1.4).gamma() ==
        doctest::Approx(std::log(oracle::zeta(1.4).real())).epsilon(1e-12));
}

TEST_CASE("abscissa checks") {
  CHECK_THROWS_AS(make_context(MultiplicativeSpec::all_ones(), 1.0), ConvergenceError);
  CHECK_THROWS_AS(make_context(MultiplicativeSpec::all_ones(), 0.5), ConvergenceError);
  const MultiplicativeSpec big(ExplicitPrimes{{{2, Complex(3.0, 0.0)}}});
  CHECK_THROWS_AS(make_context(big, 1.0), ConvergenceError);
  CHECK_NOTHROW(make_context(big, 2.0));
  const auto ctx = make_context(MultiplicativeSpec::all_ones(), 1.4);
  CHECK_THROWS_AS(L_eval(ctx, Complex(1.3, 0.0)), DomainError);
  CHECK_THROWS_AS(ln_L(ctx, Complex(1.39, 5.0)), DomainError);
}

TEST_CASE("zeta against the alternating-series oracle") {
  const auto ctx = make_context(MultiplicativeSpec::all_ones(), 1.4);
  for (Complex s : {Complex(2.0, 0.0), Complex(3.0, 0.0), Complex(1.4, 0.0), Complex(1.5, 0.5), Complex(1.41, -1.0),
                    Complex(4.0, 0.5), Complex(2.5, 3.0)}) {
    CAPTURE(s);
    const auto v = L_eval(ctx, s);
    CHECK(rel(v.value, oracle::zeta(s)) < 1e-12);
    CHECK(rel(ln_L(ctx, s).value, std::log(oracle::zeta(s))) < 1e-12);
  }
  CHECK(L_eval(ctx, Complex(2.0, 0.0)).value.real() == doctest::Approx(kPi2over6).epsilon(1e-14));
}

TEST_CASE("chi4 against Catalan's constant and the beta oracle") {
  const auto ctx = make_context(MultiplicativeSpec::chi4(), 1.4);
  CHECK(L_eval(ctx, Complex(2.0, 0.0)).value.real() == doctest::Approx(0.915965594177219015).epsilon(1e-14));
  for (Complex s : {Complex(1.4, 0.0), Complex(1.7, -0.8), Complex(3.0, 1.0)}) {
    CAPTURE(s);
    CHECK(rel(L_eval(ctx, s).value, oracle::beta(s)) < 1e-12);
    CHECK(rel(ln_L(ctx, s).value, std::log(oracle::beta(s))) < 1e-12);
  }
}

TEST_CASE("explicit primes give a finite Euler product") {
  const MultiplicativeSpec spec(ExplicitPrimes{{{2, Complex(0.5, 0.5)}, {3, Complex(-0.7, 0.0)}, {5, Complex(0.0, 1.0)}}});
  const auto ctx = make_context(spec, 1.0);
  const Complex s(1.2, 0.7);
  Complex product = 1.0;
  for (auto [p, a] : std::vector<std::pair<double, Complex>>{{2, {0.5, 0.5}}, {3, {-0.7, 0.0}}, {5, {0.0, 1.0}}})
    product /= 1.0 - a * std::exp(-s * std::log(p));
  CHECK(rel(L_eval(ctx, s).value, product) < 1e-14);
  const Complex far(4.0, 0.7);
  Complex far_product = 1.0;
  for (auto [p, a] : std::vector<std::pair<double, Complex>>{{2, {0.5, 0.5}}, {3, {-0.7, 0.0}}, {5, {0.0, 1.0}}})
    far_product /= 1.0 - a * std::exp(-far * std::log(p));
  CHECK(rel(L_eval(ctx, far, Summation::direct).value, far_product) < 1e-10);
}

TEST_CASE("direct and accelerated summation agree where both are cheap") {
  for (const auto& spec : {MultiplicativeSpec::all_ones(), MultiplicativeSpec::chi4()}) {
    const auto ctx = make_context(spec, 1.4);
    for (Complex s : {Complex(4.0, 0.5), Complex(3.0, -1.0)}) {
      const auto fast = L_eval(ctx, s);
      const auto slow = L_eval(ctx, s, Summation::direct);
      CHECK(std::abs(fast.value - slow.value) < 1e-11);
      CHECK(std::abs(ln_L(ctx, s).value - ln_L(ctx, s, Summation::direct).value) < 1e-11);
      CHECK(slow.terms_used > fast.terms_used / 4);
    }
  }
}

TEST_CASE("Taylor jets") {
  const auto ctx = make_context(MultiplicativeSpec::all_ones(), 1.4);
  const auto jet = L_taylor(ctx, Complex(2.0, 0.0), 3);
  CHECK(jet.jet[0].real() == doctest::Approx(kPi2over6).epsilon(1e-14));
  CHECK(jet.jet[1].real() == doctest::Approx(-0.93754825431584375370).epsilon(1e-12));  // zeta'(2)
  // Third coefficient against a centred difference of the oracle.
  const double h = 1e-3;
  const Complex second = (oracle::zeta(2.0 + h) - 2.0 * oracle::zeta(2.0) + oracle::zeta(2.0 - h)) / (h * h);
  CHECK(jet.jet[2].real() == doctest::Approx(second.real() / 2.0).epsilon(1e-5));
  const auto log_jet = ln_L_taylor(ctx, Complex(2.0, 0.0), 1);
  CHECK(log_jet.jet[1].real() == doctest::Approx(-0.93754825431584375370 / kPi2over6).epsilon(1e-12));
}

TEST_CASE("high-order jets against Cauchy integrals of the oracles") {
  // r^k [h^k] g(s + h) = (1/N) sum_j g(s + r e^(i theta_j)) e^(-i k theta_j)
  const std::size_t order = 48, nodes = 256;
  const double r = 0.4;
  auto cauchy = [&](auto&& g, Complex s, std::size_t k) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / nodes);
      sum += g(s + r * e) * std::pow(e, -static_cast<int>(k));
    }
    return sum / static_cast<double>(nodes);
  };
  const Complex s(1.6, 0.3);
  const auto beta_jet = L_taylor(make_context(MultiplicativeSpec::chi4(), 1.2), s, order).jet;
  // zeta minus its pole is entire, so the circle may pass close to 1.
  const auto zeta_jet = L_taylor(make_context(MultiplicativeSpec::all_ones(), 1.4), s, order).jet;
  for (std::size_t k = 0; k <= order; ++k) {
    CAPTURE(k);
    const Complex b = cauchy([](Complex u) { return oracle::beta(u); }, s, k);
    CHECK(std::abs(beta_jet[k] * std::pow(r, k) - b) < 1e-12);
    const Complex z = cauchy([](Complex u) { return oracle::zeta(u) - 1.0 / (u - 1.0); }, s, k);
    const Complex pole = std::pow(-1.0 / (s - 1.0), static_cast<int>(k)) / (s - 1.0);
    CHECK(std::abs((zeta_jet[k] - pole) * std::pow(r, k) - z) < 1e-12);
  }
}

TEST_CASE("coefficients of powers of L compose by Dirichlet convolution") {
  const auto ctx = make_context(MultiplicativeSpec::chi4(), 1.4);
  const Complex t(0.4, -1.1), u(-0.7, 0.3);
  auto padded = [&](Complex e) {
    auto c = L_power_coefficients(ctx, e, 300);
    c.insert(c.begin(), Complex(0.0, 0.0));
    return c;
  };
  const auto lhs = oracle::convolve(padded(t), padded(u));
  const auto rhs = padded(t + u);
  for (std::size_t n = 1; n <= 300; ++n) REQUIRE(std::abs(lhs[n] - rhs[n]) < 1e-12);
  // t = 1 is a(n) itself.
  const auto one = padded(Complex(1.0, 0.0));
  for (std::uint64_t n = 1; n <= 300; ++n) REQUIRE(one[n] == coefficient(ctx.spec(), n));
}

TEST_CASE("theorem domain") {
  const auto ctx = make_context(MultiplicativeSpec::all_ones(), 1.4);
  const auto dom = ctx.theorem_domain(0.1);
  CHECK(dom.sigma0 == doctest::Approx(1.4 + 0.1 * ctx.gamma()));
  CHECK(dom.contains(Complex(dom.sigma0, 3.0), Complex(0.0, 0.1)));
  CHECK_FALSE(dom.contains(Complex(dom.sigma0 - 1e-9, 0.0), Complex(0.0, 0.0)));
  CHECK_FALSE(dom.contains(Complex(5.0, 0.0), Complex(0.11, 0.0)));
}
