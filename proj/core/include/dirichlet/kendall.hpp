#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirichlet/lfunction.hpp"
#include "dirichlet/rng.hpp"

namespace dirichlet {

/// One atom of the Levy measure: a jump of size ln(n), n = p^k.
struct JumpAtom {
  std::uint64_t n;
  double size;
  /// a(p)^k / (k p^(k sigma)), i.e. Lambda(n) a(n) / (ln(n) n^sigma)
  double mass;
};

/// Compound Poisson subordinator whose Laplace exponent is
/// ln L(sigma) - ln L(sigma + z), truncated to atoms n <= N.
class SubordinatorModel {
 public:
  SubordinatorModel(LFunctionContext ctx, double sigma, std::vector<JumpAtom> atoms);

  const LFunctionContext& context() const noexcept { return ctx_; }
  double sigma() const noexcept { return sigma_; }
  const std::vector<JumpAtom>& atoms() const noexcept { return atoms_; }
  /// lambda, the total mass of the truncated measure.
  double total_mass() const noexcept { return total_mass_; }
  /// ln L(sigma) from the L-function itself.
  double log_L_sigma() const noexcept { return log_L_sigma_; }
  /// ln L(sigma) - lambda, the mass lost to truncation.
  double mass_defect() const noexcept { return log_L_sigma_ - total_mass_; }
  /// Expected jump size per unit time, sum of mass * size.
  double drift_compensation() const noexcept { return drift_compensation_; }

  /// Atom index for a uniform variate in (0, 1).
  std::size_t atom_for(double u) const;

 private:
  LFunctionContext ctx_;
  double sigma_;
  std::vector<JumpAtom> atoms_;
  std::vector<double> cumulative_;
  double total_mass_ = 0.0;
  double log_L_sigma_ = 0.0;
  double drift_compensation_ = 0.0;
};

/// Throws DomainError("probabilistic mode requires nonnegative coefficients")
/// unless every a(p) is real and nonnegative.
SubordinatorModel build_model(const LFunctionContext& ctx, double sigma, std::uint64_t n_atoms = 1u << 16);

struct PathRecord {
  std::vector<double> jump_times;
  std::vector<double> jump_sizes;
  /// n with jump size ln(n), kept exactly.
  std::vector<std::uint64_t> jump_labels;
  double horizon = 0.0;

  /// X_t, the sum of jump sizes up to time t.
  double value_at(double t) const;
};

/// Poisson(lambda t_max) jumps at sorted uniform times on [0, t_max], sizes
/// drawn from the normalized atoms.
PathRecord sample_path(const SubordinatorModel& model, double t_max, CounterRng& rng);
PathRecord sample_path(const SubordinatorModel& model, double t_max, std::uint64_t seed);

struct FirstPassageSample {
  double x = 0.0;
  /// +infinity when the level is not reached within the path horizon.
  double y = std::numeric_limits<double>::infinity();
  /// n with y = c x + c ln(n); empty when not hit or when rounding leaves the guard band.
  std::optional<std::uint64_t> n_label;

  bool hit() const noexcept { return y != std::numeric_limits<double>::infinity(); }
};

/// First time Z_t = t/c - X_t exceeds x. Between jumps Z rises linearly, so
/// the crossing happens at t = c (x + X_t) inside the current segment.
FirstPassageSample first_passage(const PathRecord& path, double x, double c);

/// Counter and frequency for one outcome; n = 0 stands for "everything else".
struct CellStat {
  std::uint64_t n;
  std::uint64_t count;
  double expected_probability;
  double empirical_probability;
  double z;
};

struct FitSummary {
  std::vector<CellStat> cells;
  CellStat rest;
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 1.0;
  /// Largest |z| among cells whose expected count is at least min_expected.
  double max_abs_z = 0.0;
  bool passed = false;
};

struct StatThresholds {
  double z = 4.0;
  double p_value = 1e-4;
  double min_expected = 10.0;
  double censoring = 1e-3;
};

struct SimulationOptions {
  /// 0 picks the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
  std::uint64_t block_size = 1u << 14;
  StatThresholds thresholds{};
};

struct MarginalReport {
  double t;
  std::uint64_t paths;
  std::uint64_t seed;
  double mean_jumps;
  double expected_jumps;
  double jumps_z;
  FitSummary fit;
  bool passed;
};

/// Empirical law of X_t on {ln n : n <= n_max} against L(sigma)^-t d_t(n) a(n) n^-sigma.
MarginalReport marginal_law_check(const SubordinatorModel& model, double t, std::uint64_t paths, std::uint64_t seed,
                                  std::uint64_t n_max = 64, const SimulationOptions& opts = {});

struct PassageReport {
  double x;
  double c;
  std::uint64_t paths;
  std::uint64_t seed;
  double horizon;
  /// 1/c exceeds the expected jump size per unit time, so passage is certain.
  bool stable;
  std::uint64_t censored;
  double censored_fraction;
  /// Finite samples whose (y - c x)/c is not ln of an integer to 1e-9.
  std::uint64_t support_violations;
  FitSummary fit;
  bool passed;
};

/// p(n, x) = L(sigma)^(-c x) d_{c x + c ln n}(n) a(n) n^-(sigma + c ln L(sigma)) x / (x + ln n).
double passage_probability(const SubordinatorModel& model, std::uint64_t n, double x, double c);

/// Horizon used for first-passage sampling: 20 E[Y_x] = 20 c x / (1 - c m), where
/// m is the expected jump size per unit time.
double passage_horizon(const SubordinatorModel& model, double x, double c);

PassageReport passage_law_check(const SubordinatorModel& model, double x, double c, std::uint64_t paths,
                                std::uint64_t seed, std::uint64_t n_max = 10, const SimulationOptions& opts = {});

struct KendallReport {
  double y;
  double t;
  double c;
  std::uint64_t paths;
  std::uint64_t seed;
  /// int_y^inf P(Y_x <= t) dx / x
  double lhs;
  double lhs_se;
  /// int_0^t P(Z_s > y) ds / s
  double rhs;
  double rhs_se;
  double z;
  bool passed;
};

/// Both sides of Kendall's identity from independent path sets. Per path the
/// integrals are exact: the lhs integrand is 1{x < sup_{u <= t} Z_u}, and the
/// rhs integrand is an indicator on each linear segment of Z.
KendallReport kendall_integral_check(const SubordinatorModel& model, double y, double t, double c,
                                     std::uint64_t paths, std::uint64_t seed, const SimulationOptions& opts = {});

struct LaplaceEntry {
  double z;
  double empirical;
  double se;
  double theoretical;
  double zscore;
};

struct LaplaceReport {
  double t;
  std::uint64_t paths;
  std::uint64_t seed;
  std::vector<LaplaceEntry> entries;
  bool passed;
};

/// E[exp(-z X_t)] against (L(sigma + z) / L(sigma))^t.
LaplaceReport laplace_transform_check(const SubordinatorModel& model, double t, const std::vector<double>& zs,
                                      std::uint64_t paths, std::uint64_t seed, const SimulationOptions& opts = {});

struct PassageTransformReport {
  double x = 0;
  double c = 0;
  double w = 0;
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;
  /// -ln E[exp(-w Y_x)] / x
  double phi_y = 0;
  double phi_y_se = 0;
  /// Root of z/c - phi_X(z) = w, solved directly.
  double phi_y_root = 0;
  /// z/c - phi_X(z) - w at z = phi_y
  double functional_residual = 0;
  double functional_z = 0;
  /// s = sigma + c (w + ln L(sigma))
  double s = 0;
  /// s - phi_y - sigma, which should equal c f(s, c)
  double cf_empirical = 0;
  double cf_series = 0;
  double consistency_z = 0;
  bool passed = false;
};

/// phi_Y(w): the root z of z/c - phi_X(z) = w, by safeguarded Newton iteration.
double phi_y_root(const SubordinatorModel& model, double c, double w);

PassageTransformReport passage_transform_check(const SubordinatorModel& model, double x, double c, double w,
                                               std::uint64_t paths, std::uint64_t seed,
                                               const SimulationOptions& opts = {});

nlohmann::json to_json(const CellStat& c);
nlohmann::json to_json(const FitSummary& f);
nlohmann::json to_json(const MarginalReport& r);
nlohmann::json to_json(const PassageReport& r);
nlohmann::json to_json(const KendallReport& r);
nlohmann::json to_json(const LaplaceReport& r);
nlohmann::json to_json(const PassageTransformReport& r);

}  // namespace dirichlet
