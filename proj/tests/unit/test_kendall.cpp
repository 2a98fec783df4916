#include <doctest.h>

#include <cmath>
#include <set>

#include "dirichlet/errors.hpp"
#include "dirichlet/kendall.hpp"
#include "oracles.hpp"

using namespace dirichlet;

namespace {

const SubordinatorModel& zeta_model() {
  static const auto model = build_model(make_context(MultiplicativeSpec::all_ones(), 2.0), 2.0);
  return model;
}

SubordinatorModel empty_model() {
  return build_model(make_context(MultiplicativeSpec(ExplicitPrimes{}), 2.0), 2.0);
}

// P(X_t = ln n) for n <= n_max as a compound Poisson law: e^(-lambda t)
// sum_k t^k / k! mu^{*k}(n) with mu(p^j) = 1 / (j p^(j sigma)) and
// lambda = ln zeta(sigma).
std::vector<double> compound_poisson_law(double sigma, double t, std::size_t n_max) {
  std::vector<double> mu(n_max + 1, 0.0);
  for (std::size_t n = 2; n <= n_max; ++n) {
    const auto f = oracle::trial_division(n);
    if (f.size() == 1) mu[n] = 1.0 / (f[0].second * std::pow(static_cast<double>(n), sigma));
  }
  const double lambda = std::log(oracle::zeta(sigma).real());
  std::vector<double> power(n_max + 1, 0.0), law(n_max + 1, 0.0);
  power[1] = 1.0;
  double weight = std::exp(-lambda * t);
  for (int k = 0; k < 60; ++k) {
    for (std::size_t n = 1; n <= n_max; ++n) law[n] += weight * power[n];
    std::vector<double> next(n_max + 1, 0.0);
    for (std::size_t a = 1; a <= n_max; ++a) {
      if (power[a] == 0.0) continue;
      for (std::size_t b = 2; a * b <= n_max; ++b) next[a * b] += power[a] * mu[b];
    }
    power = std::move(next);
    weight *= t / (k + 1);
  }
  return law;
}

}  // namespace

TEST_CASE("jump measure") {
  const auto& m = zeta_model();
  CHECK(m.log_L_sigma() == doctest::Approx(std::log(std::numbers::pi * std::numbers::pi / 6.0)).epsilon(1e-12));
  CHECK(m.mass_defect() >= 0.0);
  CHECK(m.mass_defect() < 1e-4);
  std::set<std::uint64_t> labels;
  for (const auto& a : m.atoms()) labels.insert(a.n);
  CHECK(labels.count(2));
  CHECK(labels.count(4));
  CHECK(labels.count(9));
  CHECK_FALSE(labels.count(6));
  CHECK_FALSE(labels.count(1));
  for (const auto& a : m.atoms()) {
    if (a.n == 2) CHECK(a.mass == doctest::Approx(0.25).epsilon(1e-15));
    if (a.n == 8) CHECK(a.mass == doctest::Approx(1.0 / (3.0 * 64.0)).epsilon(1e-15));
    if (a.n == 2) CHECK(a.size == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }
  CHECK(m.atom_for(1e-12) == 0);
  CHECK(m.atoms()[m.atom_for(1.0 - 1e-16)].n > 2);
}

TEST_CASE("probabilistic mode needs nonnegative coefficients") {
  CHECK_THROWS_AS(build_model(make_context(MultiplicativeSpec::chi4(), 2.0), 2.0), DomainError);
  const MultiplicativeSpec complex_spec(ExplicitPrimes{{{2, Complex(0.3, 0.1)}}});
  CHECK_THROWS_AS(build_model(make_context(complex_spec, 2.0), 2.0), DomainError);
}

TEST_CASE("counter-based generator") {
  CounterRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4), d(2, 2, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
  }
  CounterRng u(7, 0, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  CHECK(mix64(0) != mix64(1));
}

TEST_CASE("first passage on hand-built paths") {
  const double c = 0.5, x = 1.0;
  PathRecord flat;
  flat.horizon = 10.0;
  auto fp = first_passage(flat, x, c);
  CHECK(fp.y == doctest::Approx(c * x));
  CHECK(fp.n_label == 1u);

  // A ln 2 jump before Z reaches x delays the crossing to c (x + ln 2).
  PathRecord one;
  one.horizon = 10.0;
  one.jump_times = {0.1};
  one.jump_sizes = {std::log(2.0)};
  one.jump_labels = {2};
  fp = first_passage(one, x, c);
  CHECK(fp.y == doctest::Approx(c * (x + std::log(2.0))));
  CHECK(fp.n_label == 2u);
  CHECK(one.value_at(0.05) == 0.0);
  CHECK(one.value_at(0.2) == doctest::Approx(std::log(2.0)));

  PathRecord two = one;
  two.jump_times.push_back(0.6);
  two.jump_sizes.push_back(std::log(3.0));
  two.jump_labels.push_back(3);
  fp = first_passage(two, x, c);
  CHECK(fp.y == doctest::Approx(c * (x + std::log(6.0))));
  CHECK(fp.n_label == 6u);

  // A jump after the crossing does not matter.
  PathRecord late = one;
  late.jump_times = {0.9};
  fp = first_passage(late, x, c);
  CHECK(fp.n_label == 1u);

  PathRecord short_path;
  short_path.horizon = 0.2;
  fp = first_passage(short_path, x, c);
  CHECK_FALSE(fp.hit());
  CHECK_FALSE(fp.n_label.has_value());
}

TEST_CASE("sampled paths") {
  const auto& m = zeta_model();
  const double t = 3.0;
  double jumps = 0.0, ln2 = 0.0;
  const int paths = 200000;
  for (int i = 0; i < paths; ++i) {
    CounterRng rng(11, 0, static_cast<std::uint64_t>(i));
    const auto p = sample_path(m, t, rng);
    REQUIRE(std::is_sorted(p.jump_times.begin(), p.jump_times.end()));
    REQUIRE(p.jump_sizes.size() == p.jump_times.size());
    jumps += static_cast<double>(p.jump_times.size());
    for (auto n : p.jump_labels) ln2 += n == 2 ? 1.0 : 0.0;
  }
  const double mean = m.total_mass() * t;
  CHECK(std::abs(jumps / paths - mean) < 5.0 * std::sqrt(mean / paths));
  const double mean2 = 0.25 * t;
  CHECK(std::abs(ln2 / paths - mean2) < 5.0 * std::sqrt(mean2 / paths));
  const auto a = sample_path(m, t, 5), b = sample_path(m, t, 5);
  CHECK(a.jump_times == b.jump_times);
}

TEST_CASE("marginal law against the compound Poisson oracle") {
  const auto& m = zeta_model();
  for (double t : {0.5, 1.0, 2.3}) {
    const auto oracle_law = compound_poisson_law(2.0, t, 64);
    const auto r = marginal_law_check(m, t, 200000, 3, 64);
    for (const auto& cell : r.fit.cells) {
      CAPTURE(cell.n);
      // The truncated measure shifts probabilities by at most the mass defect.
      CHECK(std::abs(cell.expected_probability - oracle_law[cell.n]) < 2.0 * t * m.mass_defect() + 1e-12);
    }
    CHECK(r.passed);
    CHECK(std::abs(r.jumps_z) < 4.0);
  }
  // P(X_t = 0) = L(sigma)^-t
  const auto r = marginal_law_check(m, 1.0, 1000, 1, 8);
  CHECK(r.fit.cells.front().n == 1);
  CHECK(r.fit.cells.front().expected_probability ==
        doctest::Approx(6.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-9));
}

TEST_CASE("first-passage law") {
  const auto& m = zeta_model();
  const double c = 0.5, x = 1.0;
  // Kendall: P(Y_x = c(x + ln n)) = x / (x + ln n) P(X_{c(x + ln n)} = ln n).
  for (std::uint64_t n : {1u, 2u, 3u, 4u, 6u, 12u}) {
    const double ln_n = std::log(static_cast<double>(n));
    const auto law = compound_poisson_law(2.0, c * (x + ln_n), 12);
    CHECK(passage_probability(m, n, x, c) == doctest::Approx(x / (x + ln_n) * law[n]).epsilon(1e-4));
  }
  double total = 0.0;
  for (std::uint64_t n = 1; n <= 200000; ++n) total += passage_probability(m, n, x, c);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(passage_horizon(m, x, c) > c * x);

  const auto r = passage_law_check(m, x, c, 200000, 9, 10);
  CHECK(r.stable);
  CHECK(r.support_violations == 0);
  CHECK(r.censored_fraction < 1e-3);
  CHECK(r.passed);
}

TEST_CASE("Kendall integrals") {
  const auto empty = empty_model();
  CHECK(empty.total_mass() == 0.0);
  const double c = 0.5, y = 0.5, t = 1.0;
  auto r = kendall_integral_check(empty, y, t, c, 1000, 1);
  CHECK(r.lhs == doctest::Approx(std::log(t / (c * y))).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(std::log(t / (c * y))).epsilon(1e-12));
  r = kendall_integral_check(zeta_model(), 3.0, t, c, 1000, 1);  // y >= t / c
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  r = kendall_integral_check(zeta_model(), y, t, c, 200000, 4);
  CHECK(std::abs(r.z) < 4.0);
  CHECK(r.lhs > 0.0);
  CHECK(r.passed);
}

TEST_CASE("transforms") {
  const auto& m = zeta_model();
  const auto lt = laplace_transform_check(m, 1.0, {0.5, 1.0, 2.0}, 100000, 2);
  CHECK(lt.passed);
  for (const auto& e : lt.entries) {
    const double expected = std::pow(oracle::zeta(2.0 + e.z).real() / oracle::zeta(2.0).real(), 1.0);
    CHECK(e.theoretical == doctest::Approx(expected).epsilon(1e-4));
  }
  const double c = 0.5, w = 0.7;
  const double root = phi_y_root(m, c, w);
  // z / c - phi_X(z) = w with phi_X(z) = ln zeta(2) - ln zeta(2 + z)
  const double phi_x = std::log(oracle::zeta(2.0).real()) - std::log(oracle::zeta(2.0 + root).real());
  CHECK(root / c - phi_x == doctest::Approx(w).epsilon(1e-4));
  const auto pt = passage_transform_check(m, 1.0, c, w, 100000, 3);
  CHECK(pt.passed);
  CHECK(pt.phi_y_root == doctest::Approx(root));
}

TEST_CASE("results do not depend on the thread count") {
  const auto& m = zeta_model();
  SimulationOptions one, many;
  one.threads = 1;
  many.threads = 7;
  many.block_size = one.block_size = 1000;
  CHECK(to_json(marginal_law_check(m, 1.0, 20000, 5, 16, one)).dump() ==
        to_json(marginal_law_check(m, 1.0, 20000, 5, 16, many)).dump());
  CHECK(to_json(passage_law_check(m, 1.0, 0.5, 20000, 5, 10, one)).dump() ==
        to_json(passage_law_check(m, 1.0, 0.5, 20000, 5, 10, many)).dump());
  CHECK(to_json(kendall_integral_check(m, 0.5, 1.0, 0.5, 20000, 5, one)).dump() ==
        to_json(kendall_integral_check(m, 0.5, 1.0, 0.5, 20000, 5, many)).dump());
}
