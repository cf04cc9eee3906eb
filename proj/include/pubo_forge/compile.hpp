#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pubo_forge/ancilla_min.hpp"
#include "pubo_forge/bench.hpp"
#include "pubo_forge/error.hpp"
#include "pubo_forge/plan.hpp"
#include "pubo_forge/polynomial.hpp"
#include "pubo_forge/precision.hpp"
#include "pubo_forge/precision_min.hpp"
#include "pubo_forge/quartic.hpp"
#include "pubo_forge/set_cover.hpp"
#include "pubo_forge/verify.hpp"
#include "pubo_forge/wmaxsat.hpp"

namespace pubo_forge {

enum class Strategy { MinAncilla, MinPrecision, ReduceMin, Arbitrary };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::MinAncilla: return "min-ancilla";
    case Strategy::MinPrecision: return "min-precision";
    case Strategy::ReduceMin: return "reduce-min";
    case Strategy::Arbitrary: return "arbitrary";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view s) {
  if (s == "min-ancilla") return Strategy::MinAncilla;
  if (s == "min-precision") return Strategy::MinPrecision;
  if (s == "reduce-min") return Strategy::ReduceMin;
  if (s == "arbitrary") return Strategy::Arbitrary;
  throw InputError("unknown strategy '" + std::string(s) + "'");
}

struct CompileOptions {
  Strategy strategy = Strategy::MinAncilla;
  GadgetMode gadget = GadgetMode::SingleAncilla;
  std::uint64_t ilp_budget = kDefaultNodeBudget;
  /// Only the arbitrary strategy draws random numbers.
  std::uint64_t seed = 1;
  bool verify = false;
  int verify_cap = kDefaultEnumerationCap;
  PrecisionOptions precision;
  /// Externally solved WMAXSAT model for degree-4 input, one flag per
  /// r-variable; replaces the internal solver.
  std::optional<std::vector<std::uint8_t>> wmaxsat_model;
};

struct CompileResult {
  ReducedInstance reduced;
  /// "identity" for degree <= 2, "wmaxsat" for degree 4, else the strategy.
  std::string method;
  bool proven_optimal = false;
  PrecisionReport precision_before;
  PrecisionReport precision_after;
  std::optional<ReductionPlan> plan;
  std::optional<SetCoverInstance> cover;
  std::optional<WMaxSatInstance> wmaxsat;
  std::optional<VerificationReport> verification;

  std::size_t ancilla_count() const { return reduced.registry.size(); }
};

namespace detail {

inline PrecisionReport precision_or_zero(const Polynomial& p, PrecisionOptions opts) {
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > 0 || opts.include_offset) return control_precision(p, opts);
  }
  return {};
}

}  // namespace detail

/// Full pipeline: choose a reduction for the input's degree, apply it, and
/// optionally check it with the oracle.
inline CompileResult compile(const Polynomial& poly, const CompileOptions& opts) {
  CompileResult r;
  const int degree = poly.degree();
  if (degree > 4) throw InputError("degree " + std::to_string(degree) + " input is not supported");
  if (degree <= 2) {
    r.reduced = identity_reduction(poly);
    r.method = "identity";
    r.proven_optimal = true;
  } else if (degree == 3) {
    r.method = to_string(opts.strategy);
    r.cover = build_set_cover(poly);
    switch (opts.strategy) {
      case Strategy::MinAncilla: {
        AncillaPlanResult a = plan_min_ancilla(poly, opts.gadget, opts.ilp_budget);
        r.plan = a.plan;
        r.proven_optimal = a.proven_optimal;
        break;
      }
      case Strategy::MinPrecision: r.plan = greedy_precision_plan(poly, opts.gadget); break;
      case Strategy::ReduceMin: r.plan = reduce_min_greedy(poly, opts.gadget); break;
      case Strategy::Arbitrary: r.plan = arbitrary_plan(poly, opts.seed, opts.gadget); break;
    }
    r.reduced = apply_plan(poly, *r.plan);
  } else {
    if (opts.gadget == GadgetMode::TripleAncilla) {
      throw InputError("the triple gadget applies to cubic reductions only; degree-4 input needs --gadget single");
    }
    r.method = "wmaxsat";
    r.wmaxsat = build_wmaxsat(poly);
    QuarticAncillaSet qset;
    if (opts.wmaxsat_model) {
      qset = decode_ancilla_set(*r.wmaxsat, *opts.wmaxsat_model);
    } else {
      WMaxSatSolution sol = solve_wmaxsat_exact(*r.wmaxsat, opts.ilp_budget);
      r.proven_optimal = sol.proven_optimal;
      qset = decode_ancilla_set(*r.wmaxsat, sol.assignment);
    }
    r.reduced = apply_quartic_plan(poly, qset);
  }
  r.precision_before = detail::precision_or_zero(poly, opts.precision);
  r.precision_after = detail::precision_or_zero(r.reduced.quadratic, opts.precision);
  if (opts.verify) r.verification = verify_reduction(poly, r.reduced, opts.verify_cap);
  return r;
}

}  // namespace pubo_forge
