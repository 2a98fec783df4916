#include "dirichlet/kendall.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "dirichlet/divisor.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/inversion.hpp"
#include "dirichlet/primes.hpp"

namespace dirichlet {

namespace {

enum Stream : std::uint64_t {
  kMarginal = 1,
  kPassage = 2,
  kKendallLhs = 3,
  kKendallRhs = 4,
  kLaplace = 5,
  kPassageTransform = 6,
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs fn(begin, end) over fixed blocks of path indices and returns the
// per-block results in block order, so reductions never depend on scheduling.
template <typename Acc, typename Fn>
std::vector<Acc> run_blocks(std::uint64_t paths, const SimulationOptions& opts, Fn&& fn) {
  const std::uint64_t block = std::max<std::uint64_t>(opts.block_size, 1);
  const std::size_t nblocks = static_cast<std::size_t>((paths + block - 1) / block);
  std::vector<Acc> out(nblocks);
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(nblocks, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t b; (b = next.fetch_add(1)) < nblocks;) {
      try {
        const std::uint64_t begin = b * block;
        out[b] = fn(begin, std::min(paths, begin + block));
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean(std::uint64_t n) const { return sum / static_cast<double>(n); }
  double standard_error(std::uint64_t n) const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double m = sum / nn;
    const double var = std::max(0.0, (sum_sq - nn * m * m) / (nn - 1.0));
    return std::sqrt(var / nn);
  }
};

struct LabelCounts {
  std::vector<std::uint64_t> counts;  // index n, 0 unused
  std::uint64_t rest = 0;
  std::uint64_t censored = 0;
  std::uint64_t violations = 0;
  std::uint64_t jumps = 0;

  void merge(const LabelCounts& o) {
    if (counts.size() < o.counts.size()) counts.resize(o.counts.size());
    for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    rest += o.rest;
    censored += o.censored;
    violations += o.violations;
    jumps += o.jumps;
  }
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a > cap || b > cap) return cap + 1;
  if (b != 0 && a > cap / b) return cap + 1;
  return std::min(a * b, cap + 1);
}

double cell_z(std::uint64_t count, double p, std::uint64_t paths) {
  const double n = static_cast<double>(paths);
  const double expected = n * p;
  const double var = n * p * (1.0 - p);
  if (var <= 0.0) return count == static_cast<std::uint64_t>(std::llround(expected)) ? 0.0 : kInf;
  return (static_cast<double>(count) - expected) / std::sqrt(var);
}

FitSummary build_fit(const LabelCounts& counts, const std::vector<double>& probs, std::uint64_t paths,
                     const StatThresholds& th) {
  FitSummary fit;
  const double n = static_cast<double>(paths);
  double p_rest = 1.0;
  std::uint64_t c_rest = counts.rest;
  double chi = 0.0;
  int used = 0;
  for (std::size_t k = 1; k < probs.size(); ++k) {
    const std::uint64_t c = k < counts.counts.size() ? counts.counts[k] : 0;
    const double p = probs[k];
    p_rest -= p;
    CellStat cell{k, c, p, static_cast<double>(c) / n, cell_z(c, p, paths)};
    fit.cells.push_back(cell);
    if (n * p >= th.min_expected) {
      fit.max_abs_z = std::max(fit.max_abs_z, std::abs(cell.z));
      chi += std::pow(static_cast<double>(c) - n * p, 2) / (n * p);
      ++used;
    } else {
      // Sparse cells join the pooled remainder for the aggregate test.
      c_rest += c;
    }
  }
  p_rest = std::max(p_rest, 0.0);
  fit.rest = {0, counts.rest, p_rest, static_cast<double>(counts.rest) / n, cell_z(counts.rest, p_rest, paths)};
  double p_pool = p_rest;
  for (const auto& cell : fit.cells)
    if (n * cell.expected_probability < th.min_expected) p_pool += cell.expected_probability;
  if (n * p_pool >= th.min_expected) {
    chi += std::pow(static_cast<double>(c_rest) - n * p_pool, 2) / (n * p_pool);
    ++used;
  }
  fit.chi_square = chi;
  fit.dof = std::max(used - 1, 0);
  fit.p_value = fit.dof > 0 ? boost::math::gamma_q(0.5 * fit.dof, 0.5 * chi) : 1.0;
  fit.passed = fit.max_abs_z < th.z && fit.p_value > th.p_value;
  return fit;
}

double combined_z(double a, double sa, double b, double sb) {
  const double se = std::hypot(sa, sb);
  if (se == 0.0) return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)) ? 0.0 : kInf;
  return (a - b) / se;
}

}  // namespace

SubordinatorModel::SubordinatorModel(LFunctionContext ctx, double sigma, std::vector<JumpAtom> atoms)
    : ctx_(std::move(ctx)), sigma_(sigma), atoms_(std::move(atoms)) {
  cumulative_.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw DomainError("jump atom with invalid mass");
    total_mass_ += a.mass;
    drift_compensation_ += a.mass * a.size;
    cumulative_.push_back(total_mass_);
  }
  log_L_sigma_ = ln_L(ctx_, Complex(sigma_, 0.0)).value.real();
}

std::size_t SubordinatorModel::atom_for(double u) const {
  const double target = u * total_mass_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

SubordinatorModel build_model(const LFunctionContext& ctx, double sigma, std::uint64_t n_atoms) {
  if (!ctx.spec().nonnegative()) throw DomainError("probabilistic mode requires nonnegative coefficients");
  if (!(sigma >= ctx.sigma())) throw DomainError("sigma: must not be left of the context abscissa");
  if (n_atoms < 2) throw DomainError("N: at least one atom required");

  std::vector<JumpAtom> atoms;
  const PrimeSieve sieve(n_atoms);
  for (std::uint64_t p : sieve.primes()) {
    const double ap = ctx.spec().at_prime(p).real();
    if (ap == 0.0) continue;
    std::uint64_t q = p;
    for (unsigned k = 1;; ++k) {
      const double size = static_cast<double>(k) * std::log(static_cast<double>(p));
      const double mass = std::pow(ap, k) * std::exp(-sigma * size) / k;
      atoms.push_back({q, size, mass});
      if (q > n_atoms / p) break;
      q *= p;
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const JumpAtom& a, const JumpAtom& b) { return a.n < b.n; });
  return SubordinatorModel(ctx, sigma, std::move(atoms));
}

double PathRecord::value_at(double t) const {
  double x = 0.0;
  for (std::size_t i = 0; i < jump_times.size() && jump_times[i] <= t; ++i) x += jump_sizes[i];
  return x;
}

PathRecord sample_path(const SubordinatorModel& model, double t_max, CounterRng& rng) {
  if (!(t_max > 0.0)) throw DomainError("t_max: must be positive");
  PathRecord path;
  path.horizon = t_max;
  const double mean = model.total_mass() * t_max;
  if (mean <= 0.0) return path;
  std::poisson_distribution<std::uint64_t> count_dist(mean);
  const std::uint64_t count = count_dist(rng);
  path.jump_times.resize(count);
  for (auto& t : path.jump_times) t = rng.uniform() * t_max;
  std::sort(path.jump_times.begin(), path.jump_times.end());
  path.jump_sizes.reserve(count);
  path.jump_labels.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto& atom = model.atoms()[model.atom_for(rng.uniform())];
    path.jump_sizes.push_back(atom.size);
    path.jump_labels.push_back(atom.n);
  }
  return path;
}

PathRecord sample_path(const SubordinatorModel& model, double t_max, std::uint64_t seed) {
  CounterRng rng(seed, 0, 0);
  return sample_path(model, t_max, rng);
}

FirstPassageSample first_passage(const PathRecord& path, double x, double c) {
  if (!(c > 0.0)) throw DomainError("c: must be positive");
  if (!(x > 0.0)) throw DomainError("x: must be positive");
  FirstPassageSample out;
  out.x = x;
  double level = 0.0;
  std::size_t i = 0;
  for (;; ++i) {
    const double cross = c * (x + level);
    const double segment_end = i < path.jump_times.size() ? path.jump_times[i] : path.horizon;
    if (cross < segment_end || (i == path.jump_times.size() && cross <= segment_end)) {
      out.y = cross;
      break;
    }
    if (i == path.jump_times.size()) return out;
    level += path.jump_sizes[i];
  }
  const double e = std::exp((out.y - c * x) / c);
  if (e < 0x1.0p53) {
    const double r = std::nearbyint(e);
    if (r >= 1.0 && std::abs(e - r) <= 1e-6 * r) out.n_label = static_cast<std::uint64_t>(r);
  }
  return out;
}

MarginalReport marginal_law_check(const SubordinatorModel& model, double t, std::uint64_t paths, std::uint64_t seed,
                                  std::uint64_t n_max, const SimulationOptions& opts) {
  if (!(t > 0.0)) throw DomainError("t: must be positive");
  if (paths == 0) throw DomainError("paths: must be positive");
  const auto blocks = run_blocks<LabelCounts>(paths, opts, [&](std::uint64_t begin, std::uint64_t end) {
    LabelCounts acc;
    acc.counts.assign(n_max + 1, 0);
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, kMarginal, i);
      const PathRecord path = sample_path(model, t, rng);
      std::uint64_t label = 1;
      for (auto n : path.jump_labels) label = saturating_mul(label, n, n_max);
      if (label <= n_max) ++acc.counts[label];
      else ++acc.rest;
      acc.jumps += path.jump_labels.size();
    }
    return acc;
  });
  LabelCounts total;
  for (const auto& b : blocks) total.merge(b);

  std::vector<double> probs(n_max + 1, 0.0);
  const double scale = std::exp(-t * model.log_L_sigma());
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto f = factorize(n);
    probs[n] = scale * d(Complex(t, 0.0), f).real() * coefficient(model.context().spec(), f).real() *
               std::pow(static_cast<double>(n), -model.sigma());
  }

  MarginalReport r{t, paths, seed, 0, 0, 0, build_fit(total, probs, paths, opts.thresholds), false};
  const double np = static_cast<double>(paths);
  r.mean_jumps = static_cast<double>(total.jumps) / np;
  r.expected_jumps = model.total_mass() * t;
  r.jumps_z = r.expected_jumps > 0 ? (r.mean_jumps - r.expected_jumps) / std::sqrt(r.expected_jumps / np)
                                   : (total.jumps == 0 ? 0.0 : kInf);
  r.passed = r.fit.passed && std::abs(r.jumps_z) < opts.thresholds.z;
  return r;
}

double passage_probability(const SubordinatorModel& model, std::uint64_t n, double x, double c) {
  const double ln_n = std::log(static_cast<double>(n));
  const double lnL = model.log_L_sigma();
  const auto f = factorize(n);
  const double dn = d(Complex(c * x + c * ln_n, 0.0), f).real();
  const double a = coefficient(model.context().spec(), f).real();
  return std::exp(-c * x * lnL - (model.sigma() + c * lnL) * ln_n) * dn * a * x / (x + ln_n);
}

double passage_horizon(const SubordinatorModel& model, double x, double c) {
  const double load = c * model.drift_compensation();
  const double mean = load < 1.0 ? c * x / (1.0 - load) : 10.0 * c * x;
  return 20.0 * std::max(mean, c * x);
}

PassageReport passage_law_check(const SubordinatorModel& model, double x, double c, std::uint64_t paths,
                                std::uint64_t seed, std::uint64_t n_max, const SimulationOptions& opts) {
  if (!(x > 0.0)) throw DomainError("x: must be positive");
  if (!(c > 0.0)) throw DomainError("c: must be positive");
  if (paths == 0) throw DomainError("paths: must be positive");
  const double horizon = passage_horizon(model, x, c);
  const auto blocks = run_blocks<LabelCounts>(paths, opts, [&](std::uint64_t begin, std::uint64_t end) {
    LabelCounts acc;
    acc.counts.assign(n_max + 1, 0);
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, kPassage, i);
      const PathRecord path = sample_path(model, horizon, rng);
      const FirstPassageSample fp = first_passage(path, x, c);
      if (!fp.hit()) {
        ++acc.censored;
        ++acc.rest;
        continue;
      }
      std::uint64_t exact = 1;
      for (std::size_t j = 0; j < path.jump_times.size() && path.jump_times[j] < fp.y; ++j)
        exact = saturating_mul(exact, path.jump_labels[j], std::uint64_t{1} << 53);
      const bool supported = fp.n_label && *fp.n_label == exact &&
                             std::abs((fp.y - c * x) / c - std::log(static_cast<double>(*fp.n_label))) <= 1e-9;
      if (!supported) ++acc.violations;
      if (fp.n_label && *fp.n_label <= n_max) ++acc.counts[*fp.n_label];
      else ++acc.rest;
    }
    return acc;
  });
  LabelCounts total;
  for (const auto& b : blocks) total.merge(b);

  std::vector<double> probs(n_max + 1, 0.0);
  for (std::uint64_t n = 1; n <= n_max; ++n) probs[n] = passage_probability(model, n, x, c);

  PassageReport r{x, c, paths, seed, horizon, c * model.drift_compensation() < 1.0, total.censored,
                  static_cast<double>(total.censored) / static_cast<double>(paths), total.violations,
                  build_fit(total, probs, paths, opts.thresholds), false};
  r.passed = r.fit.passed && r.stable && r.censored_fraction < opts.thresholds.censoring && r.support_violations == 0;
  return r;
}

KendallReport kendall_integral_check(const SubordinatorModel& model, double y, double t, double c,
                                     std::uint64_t paths, std::uint64_t seed, const SimulationOptions& opts) {
  if (!(y > 0.0)) throw DomainError("y: must be positive");
  if (!(t > 0.0)) throw DomainError("t: must be positive");
  if (!(c > 0.0)) throw DomainError("c: must be positive");
  if (paths == 0) throw DomainError("paths: must be positive");

  struct Pair {
    Moments lhs, rhs;
  };
  const auto blocks = run_blocks<Pair>(paths, opts, [&](std::uint64_t begin, std::uint64_t end) {
    Pair acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      {
        CounterRng rng(seed, kKendallLhs, i);
        const PathRecord path = sample_path(model, t, rng);
        double level = 0.0;
        double sup = 0.0;
        for (std::size_t j = 0; j < path.jump_times.size(); ++j) {
          sup = std::max(sup, path.jump_times[j] / c - level);
          level += path.jump_sizes[j];
        }
        sup = std::max(sup, t / c - level);
        acc.lhs.add(sup > y ? std::log(sup / y) : 0.0);
      }
      {
        CounterRng rng(seed, kKendallRhs, i);
        const PathRecord path = sample_path(model, t, rng);
        double level = 0.0;
        double a = 0.0;
        double integral = 0.0;
        for (std::size_t j = 0; j <= path.jump_times.size(); ++j) {
          const double b = j < path.jump_times.size() ? path.jump_times[j] : t;
          const double from = std::max(a, c * (y + level));
          if (from < b) integral += std::log(b / from);
          if (j < path.jump_times.size()) level += path.jump_sizes[j];
          a = b;
        }
        acc.rhs.add(integral);
      }
    }
    return acc;
  });
  Pair total;
  for (const auto& b : blocks) {
    total.lhs.merge(b.lhs);
    total.rhs.merge(b.rhs);
  }
  KendallReport r{y, t, c, paths, seed, total.lhs.mean(paths), total.lhs.standard_error(paths),
                  total.rhs.mean(paths), total.rhs.standard_error(paths), 0.0, false};
  r.z = combined_z(r.lhs, r.lhs_se, r.rhs, r.rhs_se);
  r.passed = std::abs(r.z) < opts.thresholds.z;
  return r;
}

LaplaceReport laplace_transform_check(const SubordinatorModel& model, double t, const std::vector<double>& zs,
                                      std::uint64_t paths, std::uint64_t seed, const SimulationOptions& opts) {
  if (!(t > 0.0)) throw DomainError("t: must be positive");
  if (paths == 0) throw DomainError("paths: must be positive");
  for (double z : zs)
    if (!(z >= 0.0)) throw DomainError("z: must be nonnegative");
  const auto blocks = run_blocks<std::vector<Moments>>(paths, opts, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Moments> acc(zs.size());
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, kLaplace, i);
      const double x = sample_path(model, t, rng).value_at(t);
      for (std::size_t k = 0; k < zs.size(); ++k) acc[k].add(std::exp(-zs[k] * x));
    }
    return acc;
  });
  std::vector<Moments> total(zs.size());
  for (const auto& b : blocks)
    for (std::size_t k = 0; k < zs.size(); ++k) total[k].merge(b[k]);

  LaplaceReport r{t, paths, seed, {}, true};
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const double lnL = ln_L(model.context(), Complex(model.sigma() + zs[k], 0.0)).value.real();
    const double theory = std::exp(t * (lnL - model.log_L_sigma()));
    LaplaceEntry e{zs[k], total[k].mean(paths), total[k].standard_error(paths), theory, 0.0};
    e.zscore = combined_z(e.empirical, e.se, e.theoretical, 0.0);
    r.passed = r.passed && std::abs(e.zscore) < opts.thresholds.z;
    r.entries.push_back(e);
  }
  return r;
}

double phi_y_root(const SubordinatorModel& model, double c, double w) {
  if (!(c > 0.0) || !(w > 0.0)) throw DomainError("phi_Y requires c > 0 and w > 0");
  const double lnL0 = model.log_L_sigma();
  // g(z) = z/c - phi_X(z) - w is increasing and convex on z >= 0 when c m < 1,
  // so Newton from a point with g <= 0 lands right of the root and then descends.
  double z = c * w;
  for (int iter = 0; iter < 100; ++iter) {
    const SeriesJet jet = ln_L_taylor(model.context(), Complex(model.sigma() + z, 0.0), 1);
    const double g = z / c - (lnL0 - jet.jet.value().real()) - w;
    const double slope = 1.0 / c + jet.jet[1].real();
    if (!(slope > 0.0)) throw ConvergenceError("phi_Y: functional equation is not monotone (c m >= 1)");
    const double step = g / slope;
    z = std::max(z - step, 0.5 * z);
    if (std::abs(step) <= 1e-14 * std::max(1.0, z)) return z;
  }
  throw ConvergenceError("phi_Y: Newton iteration did not converge");
}

PassageTransformReport passage_transform_check(const SubordinatorModel& model, double x, double c, double w,
                                               std::uint64_t paths, std::uint64_t seed,
                                               const SimulationOptions& opts) {
  if (!(x > 0.0)) throw DomainError("x: must be positive");
  if (!(c > 0.0)) throw DomainError("c: must be positive");
  if (!(w > 0.0)) throw DomainError("w: must be positive");
  if (paths == 0) throw DomainError("paths: must be positive");
  const double horizon = passage_horizon(model, x, c);
  const auto blocks = run_blocks<Moments>(paths, opts, [&](std::uint64_t begin, std::uint64_t end) {
    Moments acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, kPassageTransform, i);
      const FirstPassageSample fp = first_passage(sample_path(model, horizon, rng), x, c);
      acc.add(fp.hit() ? std::exp(-w * fp.y) : 0.0);
    }
    return acc;
  });
  Moments total;
  for (const auto& b : blocks) total.merge(b);

  PassageTransformReport r;
  r.x = x;
  r.c = c;
  r.w = w;
  r.paths = paths;
  r.seed = seed;
  const double m = total.mean(paths);
  const double m_se = total.standard_error(paths);
  r.phi_y = -std::log(m) / x;
  r.phi_y_se = m_se / (m * x);

  const LFunctionContext& ctx = model.context();
  const double lnL0 = model.log_L_sigma();
  const SeriesJet jet = ln_L_taylor(ctx, Complex(model.sigma() + r.phi_y, 0.0), 1);
  const double phi_x = lnL0 - jet.jet.value().real();
  r.functional_residual = r.phi_y / c - phi_x - w;
  const double slope = 1.0 / c + jet.jet[1].real();
  r.functional_z = combined_z(r.functional_residual, std::abs(slope) * r.phi_y_se, 0.0, 0.0);
  r.phi_y_root = phi_y_root(model, c, w);

  r.s = model.sigma() + c * (w + lnL0);
  r.cf_empirical = r.s - r.phi_y - model.sigma();
  const LFunctionContext local(ctx.spec(), model.sigma(), ctx.tol(), ctx.policy());
  r.cf_series = c * f_eval(local, Complex(r.s, 0.0), Complex(c, 0.0)).value.real();
  r.consistency_z = combined_z(r.cf_empirical, r.phi_y_se, r.cf_series, 0.0);
  r.passed = std::abs(r.functional_z) < opts.thresholds.z && std::abs(r.consistency_z) < opts.thresholds.z;
  return r;
}

nlohmann::json to_json(const CellStat& c) {
  nlohmann::json j;
  if (c.n == 0) j["n"] = "rest";
  else j["n"] = c.n;
  j["count"] = c.count;
  j["empirical"] = c.empirical_probability;
  j["theoretical"] = c.expected_probability;
  j["z"] = std::isfinite(c.z) ? nlohmann::json(c.z) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const FitSummary& f) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : f.cells) cells.push_back(to_json(c));
  cells.push_back(to_json(f.rest));
  return {{"cells", cells}, {"chi_square", f.chi_square}, {"dof", f.dof}, {"p_value", f.p_value},
          {"max_abs_z", f.max_abs_z}, {"passed", f.passed}};
}

nlohmann::json to_json(const MarginalReport& r) {
  return {{"check", "marginal"}, {"t", r.t}, {"paths", r.paths}, {"seed", r.seed},
          {"mean_jumps", r.mean_jumps}, {"expected_jumps", r.expected_jumps}, {"jumps_z", r.jumps_z},
          {"fit", to_json(r.fit)}, {"passed", r.passed}};
}

nlohmann::json to_json(const PassageReport& r) {
  return {{"check", "passage"}, {"x", r.x}, {"c", r.c}, {"paths", r.paths}, {"seed", r.seed},
          {"horizon", r.horizon}, {"stable", r.stable}, {"censored", r.censored},
          {"censored_fraction", r.censored_fraction}, {"support_violations", r.support_violations},
          {"fit", to_json(r.fit)}, {"passed", r.passed}};
}

nlohmann::json to_json(const KendallReport& r) {
  return {{"check", "kendall"}, {"y", r.y}, {"t", r.t}, {"c", r.c}, {"paths", r.paths}, {"seed", r.seed},
          {"lhs", r.lhs}, {"lhs_se", r.lhs_se}, {"rhs", r.rhs}, {"rhs_se", r.rhs_se},
          {"z", std::isfinite(r.z) ? nlohmann::json(r.z) : nlohmann::json(nullptr)}, {"passed", r.passed}};
}

nlohmann::json to_json(const LaplaceReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"z", e.z}, {"empirical", e.empirical}, {"se", e.se}, {"theoretical", e.theoretical},
                       {"zscore", e.zscore}});
  return {{"check", "laplace"}, {"t", r.t}, {"paths", r.paths}, {"seed", r.seed}, {"entries", entries},
          {"passed", r.passed}};
}

nlohmann::json to_json(const PassageTransformReport& r) {
  return {{"check", "passage_transform"}, {"x", r.x}, {"c", r.c}, {"w", r.w}, {"paths", r.paths},
          {"seed", r.seed}, {"phi_y", r.phi_y}, {"phi_y_se", r.phi_y_se}, {"phi_y_root", r.phi_y_root},
          {"functional_residual", r.functional_residual}, {"functional_z", r.functional_z}, {"s", r.s},
          {"cf_empirical", r.cf_empirical}, {"cf_series", r.cf_series}, {"consistency_z", r.consistency_z},
          {"passed", r.passed}};
}

}  // namespace dirichlet
