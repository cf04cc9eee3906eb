#pragma once

#include <map>
#include <set>
#include <span>
#include <vector>

#include "pubo_forge/error.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/plan.hpp"
#include "pubo_forge/polynomial.hpp"
#include "pubo_forge/set_cover.hpp"

namespace pubo_forge {

/// ReduceMin: repeatedly take the pair occurring in the most remaining cubic
/// terms (ties: smallest pair) and collapse all of those terms with it.
inline ReductionPlan reduce_min_greedy(const Polynomial& poly, GadgetMode mode = GadgetMode::SingleAncilla) {
  if (poly.degree() > 3) throw InputError("ReduceMin handles cubic polynomials only");
  std::set<Triple> remaining;
  for (const Triple& t : detail::cubic_terms(poly)) remaining.insert(t);
  std::map<Pair, std::set<int>> K;
  while (!remaining.empty()) {
    std::map<Pair, int> counts;
    for (const Triple& t : remaining) {
      for (const Pair& p : t.pairs()) ++counts[p];
    }
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const Pair p = best->first;
    for (auto it = remaining.begin(); it != remaining.end();) {
      if (it->contains(p)) {
        K[p].insert(it->other(p));
        it = remaining.erase(it);
      } else {
        ++it;
      }
    }
  }
  return make_plan(poly, std::move(K), mode);
}

/// Turns a feasible cover into a plan: each term goes to the smallest
/// selected pair inside it.
inline ReductionPlan plan_from_cover(const SetCoverInstance& sc, std::span<const std::uint8_t> v,
                                     const Polynomial& poly, GadgetMode mode = GadgetMode::SingleAncilla) {
  if (v.size() != sc.candidates.size()) throw InputError("cover vector has the wrong length");
  std::vector<int> owner(sc.universe.size(), -1);
  for (std::size_t j = 0; j < sc.candidates.size(); ++j) {
    if (!v[j]) continue;
    for (std::size_t u : sc.candidates[j].covers) {
      if (owner[u] < 0 || sc.candidates[j].pair < sc.candidates[static_cast<std::size_t>(owner[u])].pair) {
        owner[u] = static_cast<int>(j);
      }
    }
  }
  std::map<Pair, std::set<int>> K;
  for (std::size_t u = 0; u < sc.universe.size(); ++u) {
    if (owner[u] < 0) {
      std::ostringstream msg;
      msg << "cover leaves term " << sc.universe[u] << " uncovered";
      throw InputError(msg.str());
    }
    const Pair& p = sc.candidates[static_cast<std::size_t>(owner[u])].pair;
    K[p].insert(sc.universe[u].other(p));
  }
  return make_plan(poly, std::move(K), mode);
}

/// rho(n) = floor((n - 1)^2 / 4): fewest pairs that collapse every cubic term
/// over n variables.
inline long long quarter_squares(long long n) {
  if (n < 2) throw InputError("quarter_squares needs n >= 2");
  return (n - 1) * (n - 1) / 4;
}

/// All pairs inside {1..ceil(n/2)} and inside {ceil(n/2)+1..n}. Every triple
/// has two members in one half, so this covers all cubic terms; its size is
/// quarter_squares(n).
inline std::vector<Pair> mantel_construction(int n) {
  if (n < 2) throw InputError("mantel_construction needs n >= 2");
  const int half = (n + 1) / 2;
  std::vector<Pair> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if ((i <= half) == (j <= half)) out.emplace_back(i, j);
    }
  }
  return out;
}

struct AncillaPlanResult {
  ReductionPlan plan;
  int cover_size = 0;
  bool proven_optimal = false;
  std::uint64_t nodes = 0;
};

/// Minimum-ancilla plan via the covering ILP. Falls back to the best cover
/// found (at worst ReduceMin's) if the node budget runs out.
inline AncillaPlanResult plan_min_ancilla(const Polynomial& poly, GadgetMode mode = GadgetMode::SingleAncilla,
                                          std::uint64_t node_budget = kDefaultNodeBudget) {
  SetCoverInstance sc = build_set_cover(poly);
  IlpInstance ilp = set_cover_to_ilp(sc);
  IlpSolution sol = solve_ilp_exact(ilp, node_budget);
  AncillaPlanResult r;
  r.plan = plan_from_cover(sc, sol.v, poly, mode);
  r.cover_size = sol.cost();
  r.proven_optimal = sol.proven_optimal;
  r.nodes = sol.nodes;
  return r;
}

}  // namespace pubo_forge
