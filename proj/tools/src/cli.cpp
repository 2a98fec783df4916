#include "dirichlet_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dirichlet/errors.hpp"
#include "dirichlet/exact_poly.hpp"
#include "dirichlet/inversion.hpp"
#include "dirichlet/json_io.hpp"
#include "dirichlet/kendall.hpp"
#include "dirichlet/lfunction.hpp"
#include "dirichlet/multiplicative.hpp"

namespace dirichlet::cli {

namespace {

using nlohmann::json;

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"eval-f", Command::eval_f},
      {"eval-L", Command::eval_L},
      {"verify-thm1", Command::verify_thm1},
      {"verify-corollary", Command::verify_corollary},
      {"verify-semigroup", Command::verify_semigroup},
      {"demo-explicit-series", Command::demo_explicit_series},
      {"simulate", Command::simulate},
      {"check-kendall", Command::check_kendall},
  };
  return names;
}

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& param, const std::string& message) : std::runtime_error(param + ": " + message) {}
};

struct Output {
  std::vector<json> records;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool passed = true;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::uint64_t v) { return std::to_string(v); }

std::vector<std::string> complex_cells(Complex z) { return {num(z.real()), num(z.imag())}; }

template <typename... Parts>
std::vector<std::string> row(Parts&&... parts) {
  std::vector<std::string> out;
  auto append = [&out](auto&& p) {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, std::vector<std::string>>) out.insert(out.end(), p.begin(), p.end());
    else if constexpr (std::is_same_v<T, std::string>) out.push_back(p);
    else if constexpr (std::is_same_v<T, bool>) out.push_back(p ? "true" : "false");
    else out.push_back(num(p));
  };
  (append(std::forward<Parts>(parts)), ...);
  return out;
}

MultiplicativeSpec load_spec(const std::string& name) {
  if (auto builtin = builtin_spec(name)) return *builtin;
  std::ifstream in(name);
  if (!in) throw UsageError("spec", "cannot read file '" + name + "' (and it is not a builtin: zeta, chi4)");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("spec", "invalid JSON in '" + name + "': " + e.what());
  }
  try {
    return spec_from_json(j.contains("spec") ? j.at("spec") : j);
  } catch (const SpecError& e) {
    throw UsageError("spec", e.what());
  } catch (const json::exception& e) {
    throw UsageError("spec", e.what());
  }
}

double sigma_or(const RunConfig& cfg, double fallback) {
  const double sigma = cfg.sigma.value_or(fallback);
  if (!std::isfinite(sigma)) throw UsageError("sigma", "must be finite");
  return sigma;
}

double tol_or(const RunConfig& cfg, double fallback) {
  const double tol = cfg.tol.value_or(fallback);
  if (!(tol > 0.0)) throw UsageError("tol", "must be positive");
  return tol;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(name, "must be positive and finite");
}

void require_finite(Complex z, const char* name) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw UsageError(name, "must be finite");
}

InversionOptions inversion_options(const RunConfig& cfg) {
  InversionOptions o;
  o.domain = cfg.best_effort ? DomainMode::best_effort : DomainMode::strict;
  o.summation = cfg.direct ? Summation::direct : Summation::accelerated;
  return o;
}

LFunctionContext build_context(const RunConfig& cfg, double sigma_default) {
  const auto spec = cfg.inline_spec.empty() ? load_spec(cfg.spec) : spec_from_json(json::parse(cfg.inline_spec));
  const double sigma = sigma_or(cfg, sigma_default);
  try {
    return make_context(spec, sigma);
  } catch (const ConvergenceError& e) {
    throw UsageError("sigma", e.what());
  }
}

Output eval_f(const RunConfig& cfg) {
  require_finite(cfg.s, "s");
  require_finite(cfg.w, "w");
  const auto ctx = build_context(cfg, 1.4);
  const SeriesValue v = f_eval(ctx, cfg.s, cfg.w, inversion_options(cfg));
  Output out;
  json r = to_json(v);
  r["s"] = complex_to_json(cfg.s);
  r["w"] = complex_to_json(cfg.w);
  r["guaranteed"] = v.guaranteed;
  out.records.push_back(r);
  out.header = {"s_re", "s_im", "w_re", "w_im", "value_re", "value_im", "terms", "tail", "guaranteed"};
  out.rows.push_back(row(complex_cells(cfg.s), complex_cells(cfg.w), complex_cells(v.value), v.terms_used,
                         v.tail_estimate, v.guaranteed));
  return out;
}

Output eval_L(const RunConfig& cfg) {
  require_finite(cfg.s, "s");
  const auto ctx = build_context(cfg, 1.4);
  const SeriesValue v = L_eval(ctx, cfg.s, cfg.direct ? Summation::direct : Summation::accelerated);
  Output out;
  json r = to_json(v);
  r["s"] = complex_to_json(cfg.s);
  out.records.push_back(r);
  out.header = {"s_re", "s_im", "value_re", "value_im", "terms", "tail"};
  out.rows.push_back(row(complex_cells(cfg.s), complex_cells(v.value), v.terms_used, v.tail_estimate));
  return out;
}

Output verify_thm1(const RunConfig& cfg) {
  if (!(cfg.rho >= 0.0) || !std::isfinite(cfg.rho)) throw UsageError("rho", "must be nonnegative and finite");
  const double tol = tol_or(cfg, 1e-8);
  const auto ctx = build_context(cfg, 1.4);
  const auto opts = inversion_options(cfg);
  const double base = ctx.sigma() + ctx.gamma() * cfg.rho;
  Output out;
  out.header = {"index", "s_re", "s_im", "w_re", "w_im", "f_re", "f_im", "residual", "terms", "tail", "ok"};
  for (int j = 0; j < 5; ++j) {
    for (int k = 0; k < 5; ++k) {
      const int index = 5 * j + k;
      const Complex s(base + j / 4.0, -1.0 + k / 2.0);
      const Complex w = cfg.rho * std::polar(1.0, 2.0 * std::numbers::pi * index / 25.0);
      const auto check = verify_functional_equation(ctx, s, w, opts);
      double residual = check.residual;
      json r{{"index", index}, {"s", complex_to_json(s)}, {"w", complex_to_json(w)}, {"f", complex_to_json(check.f)},
             {"residual", check.residual}, {"terms", check.terms}, {"tail", check.tail}};
      if (cfg.v) {
        const auto sides = exp_vf_identity(ctx, *cfg.v, s, w, opts);
        r["v"] = complex_to_json(*cfg.v);
        r["identity_residual"] = sides.residual();
        residual = std::max(residual, sides.residual());
      }
      const bool ok = residual < tol;
      r["ok"] = ok;
      out.passed = out.passed && ok;
      out.records.push_back(r);
      out.rows.push_back(row(std::to_string(index), complex_cells(s), complex_cells(w), complex_cells(check.f),
                             residual, check.terms, check.tail, ok));
    }
  }
  return out;
}

Output verify_corollary(const RunConfig& cfg) {
  if (!(cfg.rho >= 0.0) || !std::isfinite(cfg.rho)) throw UsageError("rho", "must be nonnegative and finite");
  const double tol = tol_or(cfg, 1e-8);
  const auto ctx = build_context(cfg, 1.4);
  const double base = ctx.sigma() + 2.0 * ctx.gamma() * cfg.rho;
  Output out;
  out.header = {"index", "s_re", "s_im", "w_re", "w_im", "residual", "ok"};
  for (int k = 0; k < 10; ++k) {
    const Complex s(base + 0.1 * k, -1.0 + 0.2 * k);
    const Complex w = cfg.rho * std::polar(1.0, 2.0 * std::numbers::pi * k / 10.0);
    const double residual = corollary_check(ctx, s, w);
    const bool ok = residual < tol;
    out.passed = out.passed && ok;
    out.records.push_back({{"index", k}, {"s", complex_to_json(s)}, {"w", complex_to_json(w)},
                           {"residual", residual}, {"ok", ok}});
    out.rows.push_back(row(std::to_string(k), complex_cells(s), complex_cells(w), residual, ok));
  }
  return out;
}

Output verify_semigroup(const RunConfig& cfg) {
  if (cfg.max_n < 2) throw UsageError("max-n", "must be at least 2");
  const std::uint64_t count = cfg.max_n - 1;
  std::vector<SemigroupReport> reports(count);
  resolve_boundary_convention();
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < count;) reports[i] = semigroup_identity_check(i + 2);
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  Output out;
  out.header = {"n", "ok", "convention", "max_degree", "num_terms"};
  for (const auto& r : reports) {
    out.passed = out.passed && r.ok;
    out.records.push_back(to_json(r));
    out.rows.push_back(row(r.n, r.ok, std::string(to_string(r.convention)), std::uint64_t{r.max_degree},
                           std::uint64_t{r.num_terms}));
  }
  return out;
}

Output demo_explicit_series(const RunConfig& cfg) {
  const Complex v = cfg.v.value_or(Complex(1.0, 0.0));
  require_finite(v, "v");
  if (!std::isfinite(cfg.z)) throw UsageError("z", "must be finite");
  if (std::abs(cfg.z - 2.0) > 0.13) throw UsageError("z", "must satisfy |z - 2| <= 0.13");
  const double tol = tol_or(cfg, 1e-6);
  const auto sides = explicit_series_demo(v, Complex(cfg.z, 0.0), cfg.direct ? Summation::direct : Summation::accelerated);
  const double w = (cfg.z - 2.0) / std::log(std::numbers::pi * std::numbers::pi / 6.0);
  Output out;
  const bool ok = sides.residual() < tol;
  out.passed = ok;
  out.records.push_back({{"v", complex_to_json(v)}, {"z", cfg.z}, {"w", w}, {"lhs", complex_to_json(sides.lhs)},
                         {"rhs", complex_to_json(sides.rhs)}, {"residual", sides.residual()}, {"tail", sides.tail},
                         {"ok", ok}});
  out.header = {"v_re", "v_im", "z", "w", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "ok"};
  out.rows.push_back(row(complex_cells(v), cfg.z, w, complex_cells(sides.lhs), complex_cells(sides.rhs),
                         sides.residual(), ok));
  return out;
}

SimulationOptions simulation_options(const RunConfig& cfg) {
  SimulationOptions o;
  o.threads = cfg.threads;
  return o;
}

void add_fit_rows(Output& out, const std::string& check, const FitSummary& fit) {
  for (const auto& c : fit.cells)
    out.rows.push_back(row(check, num(c.n), c.count, c.empirical_probability, c.expected_probability, c.z));
  const auto& r = fit.rest;
  out.rows.push_back(row(check, std::string("rest"), r.count, r.empirical_probability, r.expected_probability, r.z));
}

Output simulate(const RunConfig& cfg) {
  if (cfg.paths == 0) throw UsageError("paths", "must be positive");
  require_positive(cfg.c, "c");
  if (cfg.x) require_positive(*cfg.x, "x");
  if (cfg.t) require_positive(*cfg.t, "t");
  const auto ctx = build_context(cfg, 2.0);
  if (!ctx.spec().nonnegative()) throw UsageError("spec", "probabilistic mode requires nonnegative coefficients");
  const auto model = build_model(ctx, ctx.sigma());
  const auto opts = simulation_options(cfg);
  Output out;
  out.header = {"check", "n", "count", "empirical", "theoretical", "z"};
  const bool run_marginal = cfg.t.has_value() || !cfg.x.has_value();
  if (run_marginal) {
    const double t = cfg.t.value_or(1.0);
    const auto m = marginal_law_check(model, t, cfg.paths, cfg.seed, cfg.n_max.value_or(64), opts);
    const auto l = laplace_transform_check(model, t, {0.5, 1.0, 2.0}, cfg.paths, cfg.seed, opts);
    out.records.push_back(to_json(m));
    out.records.push_back(to_json(l));
    add_fit_rows(out, "marginal", m.fit);
    for (const auto& e : l.entries)
      out.rows.push_back(row(std::string("laplace"), num(e.z), std::string(), e.empirical, e.theoretical, e.zscore));
    out.passed = m.passed && l.passed;
  }
  if (cfg.x) {
    const double w = cfg.w.real() > 0.0 ? cfg.w.real() : 1.0;
    const auto p = passage_law_check(model, *cfg.x, cfg.c, cfg.paths, cfg.seed, cfg.n_max.value_or(10), opts);
    const auto tr = passage_transform_check(model, *cfg.x, cfg.c, w, cfg.paths, cfg.seed, opts);
    out.records.push_back(to_json(p));
    out.records.push_back(to_json(tr));
    add_fit_rows(out, "passage", p.fit);
    out.rows.push_back(row(std::string("phi_y"), num(w), std::string(), tr.phi_y, tr.phi_y_root,
                           (tr.phi_y - tr.phi_y_root) / tr.phi_y_se));
    out.rows.push_back(row(std::string("cf"), num(w), std::string(), tr.cf_empirical, tr.cf_series, tr.consistency_z));
    out.passed = out.passed && p.passed && tr.passed;
  }
  return out;
}

Output check_kendall(const RunConfig& cfg) {
  if (cfg.paths == 0) throw UsageError("paths", "must be positive");
  require_positive(cfg.c, "c");
  require_positive(cfg.y, "y");
  const double t = cfg.t.value_or(1.0);
  require_positive(t, "t");
  const auto ctx = build_context(cfg, 2.0);
  if (!ctx.spec().nonnegative()) throw UsageError("spec", "probabilistic mode requires nonnegative coefficients");
  const auto model = build_model(ctx, ctx.sigma());
  const auto r = kendall_integral_check(model, cfg.y, t, cfg.c, cfg.paths, cfg.seed, simulation_options(cfg));
  Output out;
  out.passed = r.passed;
  out.records.push_back(to_json(r));
  out.header = {"y", "t", "c", "paths", "seed", "lhs", "lhs_se", "rhs", "rhs_se", "z", "passed"};
  out.rows.push_back(row(r.y, r.t, r.c, r.paths, r.seed, r.lhs, r.lhs_se, r.rhs, r.rhs_se, r.z, r.passed));
  return out;
}

Output dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::eval_f: return eval_f(cfg);
    case Command::eval_L: return eval_L(cfg);
    case Command::verify_thm1: return verify_thm1(cfg);
    case Command::verify_corollary: return verify_corollary(cfg);
    case Command::verify_semigroup: return verify_semigroup(cfg);
    case Command::demo_explicit_series: return demo_explicit_series(cfg);
    case Command::simulate: return simulate(cfg);
    case Command::check_kendall: return check_kendall(cfg);
  }
  throw UsageError("command", "unknown");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void write(const Output& o, Format format, std::ostream& os) {
  switch (format) {
    case Format::json:
      for (const auto& r : o.records) os << r.dump() << '\n';
      break;
    case Format::csv: {
      auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
        os << '\n';
      };
      line(o.header);
      for (const auto& r : o.rows) line(r);
      break;
    }
    case Format::human: {
      std::vector<std::size_t> width(o.header.size());
      for (std::size_t i = 0; i < o.header.size(); ++i) width[i] = o.header[i].size();
      for (const auto& r : o.rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          os << cells[i];
          if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size() + 2, ' ');
        }
        os << '\n';
      };
      line(o.header);
      for (const auto& r : o.rows) line(r);
      os << (o.passed ? "all checks passed" : "CHECK FAILED") << '\n';
      break;
    }
  }
}

Complex complex_from_values(const std::vector<double>& v, const char* name) {
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw UsageError(name, "expects one or two numbers (re [im])");
}

// Fills options the command line left unset from a JSON simulation config.
void apply_config_file(const std::string& path, const CLI::App& app, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("config", "cannot read file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config", std::string("invalid JSON: ") + e.what());
  }
  auto unset = [&app](const char* flag) { return app.count(flag) == 0; };
  try {
    if (j.contains("spec") && unset("--spec")) {
      if (j["spec"].is_string()) {
        cfg.spec = j["spec"].get<std::string>();
      } else {
        spec_from_json(j["spec"]);
        cfg.inline_spec = j["spec"].dump();
      }
    }
    if (j.contains("sigma") && unset("--sigma")) cfg.sigma = j["sigma"].get<double>();
    if (j.contains("c") && unset("--c")) cfg.c = j["c"].get<double>();
    if (j.contains("x") && unset("--x")) cfg.x = j["x"].get<double>();
    if (j.contains("t") && unset("--t")) cfg.t = j["t"].get<double>();
    if (j.contains("y") && unset("--y")) cfg.y = j["y"].get<double>();
    if (j.contains("paths") && unset("--paths")) cfg.paths = j["paths"].get<std::uint64_t>();
    if (j.contains("seed") && unset("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("n_max") && unset("--n-max")) cfg.n_max = j["n_max"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw UsageError("config", e.what());
  } catch (const SpecError& e) {
    throw UsageError("config", e.what());
  }
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [name, cmd] : command_names())
    if (cmd == c) return name;
  return "unknown";
}

ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirichlet-series inversion, divisor functions and subordinator simulation", "dirichlet"};
  RunConfig cfg;
  std::string command;
  std::vector<double> s, w, v;
  std::string format = "json";
  std::string config_file;
  double sigma = 0, tol = 0, x = 0, t = 0;
  std::uint64_t n_max = 0;

  std::vector<std::string> names;
  for (const auto& [name, c] : command_names()) names.push_back(name);
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
  app.add_option("--spec", cfg.spec, "Builtin spec (zeta, chi4) or JSON spec file")->capture_default_str();
  app.add_option("--sigma", sigma, "Abscissa of absolute convergence (default 1.4; 2 for simulations)");
  app.add_option("--s", s, "Point s as: re [im]")->expected(1, 2);
  app.add_option("--w", w, "Parameter w as: re [im]")->expected(1, 2);
  app.add_option("--v", v, "Parameter v as: re [im]")->expected(1, 2);
  app.add_option("--z", cfg.z, "Exponent z of the explicit series")->capture_default_str();
  app.add_option("--rho", cfg.rho, "Radius bound for |w| on verification grids")->capture_default_str();
  app.add_option("--tol", tol, "Verification tolerance (1e-8; 1e-6 for demo-explicit-series)");
  app.add_option("--max-n", cfg.max_n, "Largest n for verify-semigroup")->capture_default_str();
  app.add_option("--paths", cfg.paths, "Monte Carlo paths")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--c", cfg.c, "Drift parameter c of Z_t = t/c - X_t")->capture_default_str();
  app.add_option("--x", x, "First-passage level x");
  app.add_option("--t", t, "Time t");
  app.add_option("--y", cfg.y, "Level y for check-kendall")->capture_default_str();
  app.add_option("--n-max", n_max, "Largest n reported per cell (64 marginal, 10 passage)");
  app.add_option("--threads", cfg.threads, "Worker threads, 0 = hardware concurrency")->capture_default_str();
  app.add_option("--config", config_file, "JSON simulation config {spec, sigma, c, x|t, paths, seed, n_max}");
  app.add_flag("--best-effort", cfg.best_effort, "Evaluate outside the proven domain and flag the result");
  app.add_flag("--direct", cfg.direct, "Plain partial sums instead of accelerated summation");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, kExitOk};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return {std::nullopt, kExitUsage};
  }

  try {
    cfg.command = command_names().at(command);
    if (app.count("--sigma")) cfg.sigma = sigma;
    if (app.count("--tol")) cfg.tol = tol;
    if (app.count("--x")) cfg.x = x;
    if (app.count("--t")) cfg.t = t;
    if (app.count("--n-max")) cfg.n_max = n_max;
    if (!s.empty()) cfg.s = complex_from_values(s, "s");
    if (!w.empty()) cfg.w = complex_from_values(w, "w");
    if (!v.empty()) cfg.v = complex_from_values(v, "v");
    cfg.format = format == "csv" ? Format::csv : format == "human" ? Format::human : Format::json;
    if (!config_file.empty()) apply_config_file(config_file, app, cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return {std::nullopt, kExitUsage};
  }
  return {cfg, kExitOk};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Output result;
  try {
    result = dispatch(config);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: convergence: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonConvergenceError& e) {
    err << "error: convergence: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SpecError& e) {
    err << "error: spec: " << e.what() << '\n';
    return kExitUsage;
  }

  if (config.output.empty()) {
    write(result, config.format, out);
  } else {
    std::ofstream file(config.output);
    if (!file) {
      err << "error: output: cannot open '" << config.output << "' for writing\n";
      return kExitUsage;
    }
    write(result, config.format, file);
  }
  if (!result.passed) err << "verification failed\n";
  return result.passed ? kExitOk : kExitCheckFailed;
}

}  // namespace dirichlet::cli
