#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirichlet_cli/cli.hpp"

using namespace dirichlet::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dirichlet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const auto parsed = parse_args(static_cast<int>(argv.size()), argv.data(), out, err);
  if (!parsed.config) return {parsed.exit_code, out.str(), err.str()};
  const int code = run(*parsed.config, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(DIRICHLET_TEST_DATA) + "/" + name; }

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("eval-f at w = 0") {
  const auto r = invoke({"eval-f", "--s", "2", "--w", "0"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"][0].get<double>() ==
        doctest::Approx(std::log(std::numbers::pi * std::numbers::pi / 6.0)).epsilon(1e-13));
  CHECK(j["value"][1].get<double>() == 0.0);
}

TEST_CASE("complex arguments and formats") {
  auto r = invoke({"eval-L", "--spec", "chi4", "--sigma", "1.2", "--s", "2", "0.5", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("s_re,s_im,", 0) == 0);
  CHECK(count_lines(r.out) == 2);
  r = invoke({"eval-f", "--s", "2", "--w", "0.05", "0.02", "--format", "human"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("guaranteed") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"no-such-command"}).code == kExitUsage);
  auto r = invoke({"eval-f", "--s", "1.45", "--w", "0.1"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("domain") != std::string::npos);
  r = invoke({"eval-f", "--spec", data("missing.json")});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("spec") != std::string::npos);
  r = invoke({"eval-f", "--spec", data("broken.json")});
  CHECK(r.code == kExitUsage);
  CHECK(invoke({"simulate", "--spec", "chi4", "--t", "1", "--paths", "100"}).code == kExitUsage);
  // A tolerance below double precision cannot be met.
  CHECK(invoke({"verify-thm1", "--tol", "1e-20"}).code == kExitCheckFailed);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("best-effort evaluation is flagged") {
  const auto r = invoke({"eval-f", "--s", "1.5", "1", "--w", "0", "0.1", "--best-effort"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["guaranteed"] == false);
}

TEST_CASE("spec file") {
  const auto r = invoke({"eval-L", "--spec", data("primes_2_3.json"), "--sigma", "1", "--s", "2"});
  REQUIRE(r.code == kExitOk);
  const double expected = 1.0 / (1.0 - 0.25) / (1.0 - 0.5 / 9.0);
  CHECK(nlohmann::json::parse(r.out)["value"][0].get<double>() == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("verification commands") {
  auto r = invoke({"verify-thm1"});
  CHECK(r.code == kExitOk);
  r = invoke({"verify-corollary", "--spec", "chi4", "--sigma", "1.2"});
  CHECK(r.code == kExitOk);
  r = invoke({"verify-semigroup", "--max-n", "500", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  CHECK(count_lines(r.out) == 500);  // header plus n = 2..500
  CHECK(r.out.find("reciprocal") != std::string::npos);
  r = invoke({"demo-explicit-series", "--v", "1", "--z", "2.1"});
  CHECK(r.code == kExitOk);
  CHECK(invoke({"demo-explicit-series", "--v", "1", "--z", "2.2"}).code == kExitUsage);
}

TEST_CASE("simulation config and determinism") {
  const auto one = invoke({"simulate", "--config", data("passage.json"), "--threads", "1"});
  const auto many = invoke({"simulate", "--config", data("passage.json"), "--threads", "5"});
  REQUIRE(one.code == kExitOk);
  CHECK(one.out == many.out);
  // One JSON document per line: the law, then the transform.
  REQUIRE(count_lines(one.out) == 2);
  const auto j = nlohmann::json::parse(one.out.substr(0, one.out.find('\n')));
  CHECK(j["check"] == "passage");
  CHECK(j["fit"]["cells"].size() == 7);  // n = 1..6 and the rest
  CHECK(j["fit"]["cells"].back()["n"] == "rest");
  CHECK(j["paths"] == 20000);
  CHECK(j["seed"] == 3);
  // Command-line values win over the config file.
  const auto other = invoke({"simulate", "--config", data("passage.json"), "--seed", "4"});
  CHECK(nlohmann::json::parse(other.out.substr(0, other.out.find('\n')))["seed"] == 4);

  const auto k = invoke({"check-kendall", "--y", "0.5", "--t", "1", "--paths", "20000"});
  CHECK(k.code == kExitOk);
}
