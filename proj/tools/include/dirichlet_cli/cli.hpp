#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dirichlet::cli {

enum class Command {
  eval_f,
  eval_L,
  verify_thm1,
  verify_corollary,
  verify_semigroup,
  demo_explicit_series,
  simulate,
  check_kendall,
};

enum class Format { json, csv, human };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::eval_f;
  /// Builtin name ("zeta", "chi4") or a path to a JSON spec file.
  std::string spec = "zeta";
  /// Spec object given inline in a simulation config; takes precedence over `spec`.
  std::string inline_spec;
  std::optional<double> sigma;
  std::complex<double> s{2.0, 0.0};
  std::complex<double> w{0.0, 0.0};
  std::optional<std::complex<double>> v;
  double z = 2.0;
  double rho = 0.1;
  std::optional<double> tol;
  std::uint64_t max_n = 500;
  std::uint64_t paths = 1'000'000;
  std::uint64_t seed = 1;
  double c = 0.5;
  std::optional<double> x;
  std::optional<double> t;
  double y = 0.5;
  std::optional<std::uint64_t> n_max;
  unsigned threads = 0;
  bool best_effort = false;
  bool direct = false;
  Format format = Format::json;
  /// Empty means stdout.
  std::string output;
};

std::string to_string(Command c);

/// Parses argv into a config. Prints help or the parse error and returns the
/// exit code when the program should stop.
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
};
ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs one command. Exit codes: 0 success, 1 a verification failed, 2 usage
/// or domain error (reported on err with the offending parameter).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dirichlet::cli
