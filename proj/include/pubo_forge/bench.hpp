#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "pubo_forge/ancilla_min.hpp"
#include "pubo_forge/error.hpp"
#include "pubo_forge/plan.hpp"
#include "pubo_forge/polynomial.hpp"
#include "pubo_forge/precision.hpp"
#include "pubo_forge/precision_min.hpp"
#include "pubo_forge/verify.hpp"

namespace pubo_forge {

enum class Experiment { Ancilla, Precision };

inline long long choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct BenchConfig {
  Experiment experiment = Experiment::Ancilla;
  int n = 8;
  /// Cubic term count used by random_pubo.
  int lambda = 10;
  /// Values swept by the experiments; empty means just `lambda`.
  std::vector<int> lambda_grid;
  bool include_quadratic_layer = false;
  int coeff_min = -8;
  int coeff_max = 8;
  int instances = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> strategies;
  std::vector<GadgetMode> gadgets;
  std::uint64_t ilp_budget = kDefaultNodeBudget;
  /// Fraction of instances checked with the oracle (when within its cap).
  double verify_fraction = 0.05;
  /// Record wall time per instance. Off by default so output is reproducible.
  bool timing = false;
  /// 0 = hardware concurrency; PUBO_FORGE_THREADS caps it further.
  unsigned threads = 0;

  void validate() const {
    if (n < 3 || n > 62) throw InputError("bench n must lie in [3, 62]");
    if (coeff_min > coeff_max) throw InputError("coeff_min exceeds coeff_max");
    if (coeff_min == 0 && coeff_max == 0) throw InputError("coefficient range contains only 0");
    if (instances < 1) throw InputError("instances must be positive");
    if (verify_fraction < 0 || verify_fraction > 1) throw InputError("verify_fraction must lie in [0, 1]");
    const long long total = choose(n, 3);
    auto check = [&](int l) {
      if (l < 0 || l > total) {
        throw InputError("lambda " + std::to_string(l) + " outside [0, " + std::to_string(total) + "] for n = " +
                         std::to_string(n));
      }
    };
    check(lambda);
    for (int l : lambda_grid) check(l);
  }
};

/// Twelve roughly even points on [1, C(n,3)], always including both ends.
inline std::vector<int> default_lambda_grid(int n, int points = 12) {
  const long long top = choose(n, 3);
  std::vector<int> grid;
  for (int i = 0; i < points; ++i) {
    long long v = 1 + (top - 1) * i / (points - 1);
    if (grid.empty() || grid.back() != v) grid.push_back(static_cast<int>(v));
  }
  return grid;
}

inline std::vector<int> full_lambda_grid(int n) {
  std::vector<int> grid;
  for (long long l = 1; l <= choose(n, 3); ++l) grid.push_back(static_cast<int>(l));
  return grid;
}

/// The ancilla-scaling regime: n = 8, pure cubic instances, ILP vs ReduceMin.
inline BenchConfig preset_ancilla_scaling() {
  BenchConfig c;
  c.experiment = Experiment::Ancilla;
  c.n = 8;
  c.lambda_grid = default_lambda_grid(c.n);
  c.strategies = {"ilp", "reduce-min"};
  c.gadgets = {GadgetMode::SingleAncilla};
  return c;
}

/// The precision regime: n = 11 with every quadratic term, greedy vs
/// arbitrary collapse choice, both gadgets.
inline BenchConfig preset_precision_growth() {
  BenchConfig c;
  c.experiment = Experiment::Precision;
  c.n = 11;
  c.lambda = 50;
  c.include_quadratic_layer = true;
  c.lambda_grid = {1, 10, 20, 30, 40, 50, 60, 80, 100, 120, 140, 165};
  c.strategies = {"greedy", "arbitrary"};
  c.gadgets = {GadgetMode::SingleAncilla, GadgetMode::TripleAncilla};
  return c;
}

namespace detail {

inline std::uint64_t instance_seed(const BenchConfig& cfg, int lambda, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(cfg.n), static_cast<std::uint32_t>(lambda),
                    static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

/// Uniform on [lo, hi] with 0 removed.
inline int nonzero_coeff(std::mt19937_64& rng, int lo, int hi) {
  if (lo > 0 || hi < 0) return std::uniform_int_distribution<int>(lo, hi)(rng);
  int v = std::uniform_int_distribution<int>(lo, hi - 1)(rng);
  return v >= 0 ? v + 1 : v;
}

}  // namespace detail

/// lambda distinct cubic terms drawn uniformly from all C(n,3), optionally
/// every quadratic term, coefficients uniform and nonzero. Deterministic in
/// (seed, n, lambda, instance_index).
inline Polynomial random_pubo(const BenchConfig& cfg, int instance_index) {
  cfg.validate();
  std::mt19937_64 rng(detail::instance_seed(cfg, cfg.lambda, instance_index));
  std::vector<Triple> all;
  for (int i = 1; i <= cfg.n; ++i)
    for (int j = i + 1; j <= cfg.n; ++j)
      for (int k = j + 1; k <= cfg.n; ++k) all.emplace_back(i, j, k);
  // Partial Fisher-Yates: the first lambda slots are the sample.
  for (std::size_t s = 0; s < static_cast<std::size_t>(cfg.lambda); ++s) {
    std::uniform_int_distribution<std::size_t> pick(s, all.size() - 1);
    std::swap(all[s], all[pick(rng)]);
  }
  Polynomial p(cfg.n);
  if (cfg.include_quadratic_layer) {
    for (int i = 1; i <= cfg.n; ++i)
      for (int j = i + 1; j <= cfg.n; ++j) p.add(Monomial::of({i, j}), detail::nonzero_coeff(rng, cfg.coeff_min, cfg.coeff_max));
  }
  for (std::size_t s = 0; s < static_cast<std::size_t>(cfg.lambda); ++s) {
    p.add(all[s].monomial(), detail::nonzero_coeff(rng, cfg.coeff_min, cfg.coeff_max));
  }
  return p;
}

struct BenchRecord {
  int n = 0;
  int lambda = 0;
  std::string strategy;
  GadgetMode gadget_mode = GadgetMode::SingleAncilla;
  std::size_t ancilla_count = 0;
  Coeff precision_before = 0;
  Coeff precision_after = 0;
  double precision_increase_pct = 0;
  double wall_ms = 0;
  bool proven_optimal = false;
  /// Cover size from ReduceMin on the same instance, for the sandwich check.
  std::optional<std::size_t> reduce_min_count;
  /// Set when the oracle ran on this record.
  std::optional<bool> verified;
};

inline const std::vector<std::string>& known_strategies() {
  static const std::vector<std::string> names{"ilp", "reduce-min", "greedy", "arbitrary"};
  return names;
}

inline ReductionPlan plan_for(const Polynomial& poly, std::string_view strategy, GadgetMode gadget,
                              std::uint64_t seed, std::uint64_t ilp_budget, bool* proven = nullptr) {
  if (proven) *proven = false;
  if (strategy == "ilp") {
    AncillaPlanResult r = plan_min_ancilla(poly, gadget, ilp_budget);
    if (proven) *proven = r.proven_optimal;
    return r.plan;
  }
  if (strategy == "reduce-min") return reduce_min_greedy(poly, gadget);
  if (strategy == "greedy") return greedy_precision_plan(poly, gadget);
  if (strategy == "arbitrary") return arbitrary_plan(poly, seed, gadget);
  throw InputError("unknown strategy '" + std::string(strategy) + "'");
}

inline double percent_increase(const Coeff& before, const Coeff& after) {
  if (before == 0) return 0;
  return 100.0 * (after - before).convert_to<double>() / before.convert_to<double>();
}

/// Plans and applies one strategy on one instance, and optionally checks it
/// with the oracle.
inline BenchRecord run_instance(const Polynomial& poly, const BenchConfig& cfg, std::string_view strategy,
                                GadgetMode gadget, std::uint64_t seed, bool verify) {
  BenchRecord rec;
  rec.n = poly.num_vars();
  rec.lambda = static_cast<int>(detail::cubic_terms(poly).size());
  rec.strategy = std::string(strategy);
  rec.gadget_mode = gadget;
  const auto start = std::chrono::steady_clock::now();
  ReductionPlan plan = plan_for(poly, strategy, gadget, seed, cfg.ilp_budget, &rec.proven_optimal);
  ReducedInstance reduced = apply_plan(poly, plan);
  if (cfg.timing) {
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  rec.ancilla_count = plan.ancilla_count();
  rec.precision_before = detail::precision_or_zero(poly).control_precision;
  rec.precision_after = detail::precision_or_zero(reduced.quadratic).control_precision;
  rec.precision_increase_pct = percent_increase(rec.precision_before, rec.precision_after);
  if (strategy == "ilp") rec.reduce_min_count = reduce_min_greedy(poly, GadgetMode::SingleAncilla).K.size();
  if (verify) {
    try {
      rec.verified = verify_reduction(poly, reduced).ok();
    } catch (const CapExceeded&) {
    }
  }
  return rec;
}

/// Worker count: hardware concurrency, lowered by cfg.threads and by the
/// PUBO_FORGE_THREADS environment variable.
inline unsigned bench_threads(const BenchConfig& cfg) {
  unsigned t = std::max(1u, std::thread::hardware_concurrency());
  if (cfg.threads > 0) t = std::min(t, cfg.threads);
  if (const char* env = std::getenv("PUBO_FORGE_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) t = std::min<unsigned>(t, static_cast<unsigned>(v));
  }
  return t;
}

/// Calls fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any call is rethrown here.
template <typename Fn>
void parallel_for(int count, unsigned threads, Fn&& fn) {
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

struct BenchSummary {
  std::vector<BenchRecord> records;
  int verified = 0;
  int verify_failed = 0;
  int sandwich_checked = 0;
  int sandwich_violations = 0;
};

/// Runs every (lambda, strategy, gadget, instance) combination. Records come
/// back grouped by lambda, then strategy, then gadget, then instance index.
inline BenchSummary run_experiment_records(const BenchConfig& base) {
  base.validate();
  std::vector<int> grid = base.lambda_grid.empty() ? std::vector<int>{base.lambda} : base.lambda_grid;
  const int verify_every =
      base.verify_fraction <= 0 ? 0 : std::max(1, static_cast<int>(1.0 / base.verify_fraction + 0.5));
  for (const auto& s : base.strategies) {
    if (std::find(known_strategies().begin(), known_strategies().end(), s) == known_strategies().end()) {
      throw InputError("unknown strategy '" + s + "'");
    }
  }
  BenchSummary out;
  const unsigned threads = bench_threads(base);
  for (int lambda : grid) {
    BenchConfig cfg = base;
    cfg.lambda = lambda;
    const std::size_t combos = cfg.strategies.size() * cfg.gadgets.size();
    std::vector<BenchRecord> slot(combos * static_cast<std::size_t>(cfg.instances));
    parallel_for(cfg.instances, threads, [&](int i) {
      const Polynomial poly = random_pubo(cfg, i);
      const std::uint64_t seed = detail::instance_seed(cfg, lambda, i) ^ 0x9e3779b97f4a7c15ULL;
      const bool verify = verify_every > 0 && i % verify_every == 0;
      std::size_t c = 0;
      for (const auto& s : cfg.strategies) {
        for (GadgetMode g : cfg.gadgets) {
          slot[c * static_cast<std::size_t>(cfg.instances) + static_cast<std::size_t>(i)] =
              run_instance(poly, cfg, s, g, seed, verify);
          ++c;
        }
      }
    });
    for (auto& r : slot) {
      if (r.verified) ++(*r.verified ? out.verified : out.verify_failed);
      if (r.proven_optimal && r.reduce_min_count) {
        ++out.sandwich_checked;
        const std::size_t per = r.gadget_mode == GadgetMode::SingleAncilla ? 1 : 3;
        if (r.ancilla_count > *r.reduce_min_count * per) ++out.sandwich_violations;
      }
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

inline constexpr std::string_view kCsvHeader =
    "n,lambda,strategy,gadget,mean_ancilla,mean_precision_increase_pct,proven_optimal_frac,mean_wall_ms";

/// Aggregates records into one CSV row per (lambda, strategy, gadget).
/// Comment lines carry run metadata. proven_optimal_frac is 0 for
/// heuristic strategies, which make no optimality claim.
inline std::string format_csv(const BenchConfig& cfg, const BenchSummary& sum) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "# experiment=" << (cfg.experiment == Experiment::Ancilla ? "ancilla" : "precision") << " n=" << cfg.n
      << " instances=" << cfg.instances << " seed=" << cfg.seed
      << " quadratic_layer=" << (cfg.include_quadratic_layer ? 1 : 0) << " coeffs=[" << cfg.coeff_min << ","
      << cfg.coeff_max << "]\n";
  if (cfg.experiment == Experiment::Precision) {
    out << "# threshold_pct=100 (a 100% increase in control precision exhausts current annealer capabilities)\n";
  }
  out << "# verified=" << sum.verified << " verify_failed=" << sum.verify_failed << "\n";
  out << "# sandwich_checked=" << sum.sandwich_checked << " sandwich_violations=" << sum.sandwich_violations << "\n";
  out << kCsvHeader << "\n";

  std::size_t at = 0;
  while (at < sum.records.size()) {
    const BenchRecord& head = sum.records[at];
    double anc = 0, pct = 0, wall = 0, proven = 0;
    std::size_t count = 0;
    for (; at < sum.records.size(); ++at) {
      const BenchRecord& r = sum.records[at];
      if (r.lambda != head.lambda || r.strategy != head.strategy || r.gadget_mode != head.gadget_mode) break;
      anc += static_cast<double>(r.ancilla_count);
      pct += r.precision_increase_pct;
      wall += r.wall_ms;
      proven += r.proven_optimal ? 1 : 0;
      ++count;
    }
    const double k = static_cast<double>(count);
    out << head.n << ',' << head.lambda << ',' << head.strategy << ',' << to_string(head.gadget_mode) << ','
        << anc / k << ',' << pct / k << ',' << proven / k << ',' << wall / k << "\n";
  }
  return out.str();
}

inline std::string run_ancilla_experiment(BenchConfig cfg) {
  cfg.experiment = Experiment::Ancilla;
  if (cfg.strategies.empty()) cfg.strategies = {"ilp", "reduce-min"};
  if (cfg.gadgets.empty()) cfg.gadgets = {GadgetMode::SingleAncilla};
  return format_csv(cfg, run_experiment_records(cfg));
}

inline std::string run_precision_experiment(BenchConfig cfg) {
  cfg.experiment = Experiment::Precision;
  if (cfg.strategies.empty()) cfg.strategies = {"greedy", "arbitrary"};
  if (cfg.gadgets.empty()) cfg.gadgets = {GadgetMode::SingleAncilla, GadgetMode::TripleAncilla};
  return format_csv(cfg, run_experiment_records(cfg));
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T v{};
  if (!(in >> v) || !in.eof()) throw InputError("bad value '" + value + "' for " + key);
  return v;
}

inline bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw InputError("bad flag '" + value + "' for " + key);
}

inline GadgetMode parse_gadget(const std::string& s) {
  if (s == "single") return GadgetMode::SingleAncilla;
  if (s == "triple") return GadgetMode::TripleAncilla;
  throw InputError("unknown gadget '" + s + "'");
}

}  // namespace detail

/// Applies one key=value setting to a config. Unknown keys are errors.
inline void apply_setting(BenchConfig& cfg, const std::string& key, const std::string& value) {
  using namespace detail;
  if (key == "experiment") {
    if (value == "ancilla") cfg.experiment = Experiment::Ancilla;
    else if (value == "precision") cfg.experiment = Experiment::Precision;
    else throw InputError("unknown experiment '" + value + "'");
  } else if (key == "n") {
    cfg.n = parse_number<int>(key, value);
  } else if (key == "lambda") {
    cfg.lambda = parse_number<int>(key, value);
  } else if (key == "lambdas") {
    cfg.lambda_grid.clear();
    for (const auto& v : split_list(value)) cfg.lambda_grid.push_back(parse_number<int>(key, v));
  } else if (key == "quadratic_layer") {
    cfg.include_quadratic_layer = parse_flag(key, value);
  } else if (key == "coeff_min") {
    cfg.coeff_min = parse_number<int>(key, value);
  } else if (key == "coeff_max") {
    cfg.coeff_max = parse_number<int>(key, value);
  } else if (key == "instances") {
    cfg.instances = parse_number<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "strategies") {
    cfg.strategies = split_list(value);
  } else if (key == "gadgets") {
    cfg.gadgets.clear();
    for (const auto& g : split_list(value)) cfg.gadgets.push_back(parse_gadget(g));
  } else if (key == "ilp_budget") {
    cfg.ilp_budget = parse_number<std::uint64_t>(key, value);
  } else if (key == "verify_fraction") {
    cfg.verify_fraction = parse_number<double>(key, value);
  } else if (key == "timing") {
    cfg.timing = parse_flag(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_number<unsigned>(key, value);
  } else {
    throw InputError("unknown bench setting '" + key + "'");
  }
}

/// Reads key=value lines ('#' starts a comment) on top of `cfg`.
inline void load_config_text(BenchConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    try {
      apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
  }
}

}  // namespace pubo_forge
