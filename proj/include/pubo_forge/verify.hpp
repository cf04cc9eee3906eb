#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pubo_forge/ancilla.hpp"
#include "pubo_forge/ancilla_min.hpp"
#include "pubo_forge/brute_force.hpp"
#include "pubo_forge/error.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/plan.hpp"
#include "pubo_forge/polynomial.hpp"
#include "pubo_forge/precision.hpp"
#include "pubo_forge/set_cover.hpp"

namespace pubo_forge {

struct VerificationReport {
  bool pointwise_ok = false;
  bool ground_state_ok = false;
  /// Every ancilla assignment attaining the minimum for a given x sets each
  /// defined ancilla to its meaning (e.g. y = x_i x_j). Holds when penalty
  /// scales are strictly large enough; a scale at the boundary keeps the
  /// first two checks but lets a wrong ancilla tie.
  bool ancilla_consistent = false;
  /// First computational assignment at which a check failed, and which.
  std::optional<std::vector<std::uint8_t>> counterexample;
  std::string failed_check;
  /// Values at the counterexample: original f(x) and min over ancillas of
  /// the reduced form. Only meaningful when a counterexample is present.
  Coeff expected_value = 0;
  Coeff reduced_value = 0;
  PrecisionReport precision_before;
  PrecisionReport precision_after;
  std::size_t ancilla_count = 0;
  /// Largest number of variables enumerated jointly.
  std::size_t enumeration_width = 0;

  bool ok() const { return pointwise_ok && ground_state_ok && ancilla_consistent; }
};

namespace detail {

/// Terms over the computational variables (bits 0..n-1) plus one block of
/// ancillas (bits n..n+k-1), evaluated either in int64 or exactly.
struct Block {
  std::size_t width = 0;
  std::vector<std::uint64_t> masks;
  std::vector<Coeff> coeffs;
  std::vector<std::int64_t> small;
  bool fast = false;
  /// Per local ancilla: computational bits whose product it stands for
  /// (0 when it has no definition).
  std::vector<std::uint64_t> meaning;

  void finish() {
    Coeff total = 0;
    for (const Coeff& c : coeffs) total += abs(c);
    fast = total <= Coeff(std::int64_t{1} << 62);
    if (fast) {
      small.clear();
      for (const Coeff& c : coeffs) small.push_back(c.convert_to<std::int64_t>());
    }
  }

  Coeff eval(std::uint64_t x) const {
    if (fast) {
      std::int64_t s = 0;
      for (std::size_t t = 0; t < masks.size(); ++t) {
        if ((x & masks[t]) == masks[t]) s += small[t];
      }
      return s;
    }
    Coeff s = 0;
    for (std::size_t t = 0; t < masks.size(); ++t) {
      if ((x & masks[t]) == masks[t]) s += coeffs[t];
    }
    return s;
  }

  struct Minimum {
    Coeff value;
    bool consistent;
  };

  /// min over all settings of this block's ancillas with x fixed, and
  /// whether every minimizing setting matches the ancilla meanings.
  Minimum min_over_ancillas(std::uint64_t x, std::size_t n) const {
    const std::size_t k = width - n;
    std::uint64_t expect = 0, care = 0;
    for (std::size_t b = 0; b < k; ++b) {
      if (meaning[b] == 0) continue;
      care |= std::uint64_t{1} << b;
      if ((x & meaning[b]) == meaning[b]) expect |= std::uint64_t{1} << b;
    }
    std::optional<Coeff> best;
    bool consistent = true;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
      Coeff v = eval(x | (a << n));
      const bool match = ((a ^ expect) & care) == 0;
      if (!best || v < *best) {
        best = v;
        consistent = match;
      } else if (v == *best) {
        consistent = consistent && match;
      }
    }
    return {*best, consistent};
  }
};

inline PrecisionReport precision_or_zero(const Polynomial& p) {
  if (p.empty()) return {};
  return control_precision(p);
}

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

}  // namespace detail

/// Exhaustive check that `reduced` reproduces `original` exactly: for every
/// computational assignment x, the minimum of the reduced form over all
/// ancilla assignments equals original(x), and the projection of the reduced
/// ground states equals the original ground states.
///
/// Ancillas that never share a term are independent given x, so the
/// minimum is taken jointly within each connected group of ancillas and
/// summed. The cap bounds n plus the largest group.
inline VerificationReport verify_reduction(const Polynomial& original, const ReducedInstance& reduced,
                                           int cap = kDefaultEnumerationCap) {
  const int n = original.num_vars();
  if (reduced.source_n != n || reduced.quadratic.num_vars() != n) {
    throw InputError("reduced instance has " + std::to_string(reduced.source_n) + " computational variables, expected " +
                     std::to_string(n));
  }
  if (original.ancilla_extent() > 0) throw InputError("original polynomial must not reference ancillas");
  const std::size_t anc = std::max(reduced.registry.size(), reduced.quadratic.ancilla_extent());

  std::vector<std::size_t> parent(anc);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [m, c] : reduced.quadratic.terms()) {
    std::optional<std::size_t> first;
    for (VarRef v : m.vars()) {
      if (!v.is_ancilla()) continue;
      if (!first) first = v.index;
      else parent[detail::find_root(parent, v.index)] = detail::find_root(parent, *first);
    }
  }
  std::vector<std::size_t> block_of(anc), local(anc);
  std::vector<std::size_t> roots;
  std::vector<std::size_t> sizes;
  for (std::size_t a = 0; a < anc; ++a) {
    std::size_t r = detail::find_root(parent, a);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      sizes.push_back(0);
      it = roots.end() - 1;
    }
    block_of[a] = static_cast<std::size_t>(it - roots.begin());
    local[a] = sizes[block_of[a]]++;
  }
  const std::size_t widest = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  const std::size_t width = static_cast<std::size_t>(n) + widest;
  if (width > static_cast<std::size_t>(cap) || width >= 64) {
    throw CapExceeded("verification needs " + std::to_string(width) + " jointly enumerated variables, cap is " +
                      std::to_string(cap));
  }

  detail::Block base;
  base.width = static_cast<std::size_t>(n);
  std::vector<detail::Block> blocks(roots.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].width = static_cast<std::size_t>(n) + sizes[b];
    blocks[b].meaning.assign(sizes[b], 0);
  }
  for (std::size_t a = 0; a < anc && a < reduced.registry.size(); ++a) {
    const AncillaDef& d = reduced.registry[a];
    std::uint64_t m = (std::uint64_t{1} << (d.pair.i - 1)) | (std::uint64_t{1} << (d.pair.j - 1));
    if (d.kind == AncillaDef::Kind::TripleViaPair) m |= std::uint64_t{1} << (d.k - 1);
    blocks[block_of[a]].meaning[local[a]] = m;
  }
  for (const auto& [m, c] : reduced.quadratic.terms()) {
    std::uint64_t mask = 0;
    std::optional<std::size_t> blk;
    for (VarRef v : m.vars()) {
      if (v.is_ancilla()) {
        blk = block_of[v.index];
        mask |= std::uint64_t{1} << (static_cast<std::size_t>(n) + local[v.index]);
      } else {
        mask |= std::uint64_t{1} << (v.index - 1);
      }
    }
    detail::Block& target = blk ? blocks[*blk] : base;
    target.masks.push_back(mask);
    target.coeffs.push_back(c);
  }
  base.finish();
  for (auto& b : blocks) b.finish();

  VerificationReport rep;
  rep.ancilla_count = reduced.registry.size();
  rep.enumeration_width = width;
  rep.precision_before = detail::precision_or_zero(original);
  rep.precision_after = detail::precision_or_zero(reduced.quadratic);
  rep.pointwise_ok = true;

  detail::Block orig;
  orig.width = static_cast<std::size_t>(n);
  for (const auto& [m, c] : original.terms()) {
    std::uint64_t mask = 0;
    for (VarRef v : m.vars()) mask |= std::uint64_t{1} << (v.index - 1);
    orig.masks.push_back(mask);
    orig.coeffs.push_back(c);
  }
  orig.finish();
  auto reduced_min = [&](std::uint64_t x, bool* consistent) {
    Coeff v = base.eval(x);
    for (const auto& b : blocks) {
      auto m = b.min_over_ancillas(x, static_cast<std::size_t>(n));
      v += m.value;
      if (consistent) *consistent = *consistent && m.consistent;
    }
    return v;
  };
  // A pointwise mismatch replaces an earlier inconsistency witness.
  auto fail_at = [&](std::uint64_t x, const Coeff& fx, const Coeff& gx, const char* check) {
    const bool upgrade = std::string_view(check) == "pointwise" && rep.failed_check == "ancilla_consistent";
    if (rep.counterexample && !upgrade) return;
    rep.counterexample = detail::unpack(x, static_cast<std::size_t>(n));
    rep.expected_value = fx;
    rep.reduced_value = gx;
    rep.failed_check = check;
  };

  rep.ancilla_consistent = true;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::optional<Coeff> fmin, gmin;
  for (std::uint64_t x = 0; x < count; ++x) {
    bool consistent = true;
    Coeff fx = orig.eval(x), gx = reduced_min(x, &consistent);
    if (fx != gx) {
      rep.pointwise_ok = false;
      fail_at(x, fx, gx, "pointwise");
    }
    if (!consistent) {
      rep.ancilla_consistent = false;
      fail_at(x, fx, gx, "ancilla_consistent");
    }
    if (!fmin || fx < *fmin) fmin = fx;
    if (!gmin || gx < *gmin) gmin = gx;
  }
  // Equal everywhere means equal argmin sets; otherwise compare them.
  rep.ground_state_ok = true;
  if (!rep.pointwise_ok) {
    for (std::uint64_t x = 0; x < count; ++x) {
      Coeff fx = orig.eval(x), gx = reduced_min(x, nullptr);
      if ((fx == *fmin) != (gx == *gmin)) {
        rep.ground_state_ok = false;
        fail_at(x, fx, gx, "ground_state");
        break;
      }
    }
  }
  return rep;
}

/// Every cubic monomial over n variables, coefficient 1.
inline Polynomial complete_cubic(int n) {
  Polynomial p(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) p.add(Monomial::of({i, j, k}), 1);
  return p;
}

/// True iff every triple over 1..n contains at least one of `pairs`.
inline bool covers_all_triples(const std::vector<Pair>& pairs, int n) {
  std::set<Pair> have(pairs.begin(), pairs.end());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        if (!have.contains(Pair(i, j)) && !have.contains(Pair(i, k)) && !have.contains(Pair(j, k))) return false;
      }
  return true;
}

enum class SaturationOutcome { Saturated, Mismatch, BudgetExhausted };

inline const char* to_string(SaturationOutcome o) {
  switch (o) {
    case SaturationOutcome::Saturated: return "saturated";
    case SaturationOutcome::Mismatch: return "mismatch";
    case SaturationOutcome::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

struct SaturationReport {
  SaturationOutcome outcome = SaturationOutcome::Mismatch;
  int optimum = 0;
  long long expected = 0;
  std::uint64_t nodes = 0;

  bool saturated() const { return outcome == SaturationOutcome::Saturated; }
};

/// Solves the cover problem for the complete cubic set over n variables and
/// compares the optimum with quarter_squares(n).
inline SaturationReport verify_saturation(int n, std::uint64_t node_budget = kDefaultNodeBudget) {
  if (n < 3) throw InputError("saturation check needs n >= 3");
  const IlpInstance ilp = set_cover_to_ilp(build_set_cover(complete_cubic(n)));
  const IlpSolution sol = solve_ilp_exact(ilp, node_budget);
  SaturationReport r;
  r.optimum = sol.cost();
  r.expected = quarter_squares(n);
  r.nodes = sol.nodes;
  if (!sol.proven_optimal) r.outcome = SaturationOutcome::BudgetExhausted;
  else r.outcome = r.optimum == r.expected ? SaturationOutcome::Saturated : SaturationOutcome::Mismatch;
  return r;
}

}  // namespace pubo_forge
