#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

#include "pubo_forge/ancilla.hpp"
#include "pubo_forge/error.hpp"
#include "pubo_forge/gadgets.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/plan.hpp"
#include "pubo_forge/polynomial.hpp"
#include "pubo_forge/wmaxsat.hpp"

namespace pubo_forge {

/// Ancillas chosen for a quartic reduction: pair ancillas x_ij, and triple
/// ancillas x_ijk each built from one of its sub-pairs (which must itself be
/// among `pairs`).
struct QuarticAncillaSet {
  std::set<Pair> pairs;
  std::map<Triple, Pair> triples;

  std::size_t size() const { return pairs.size() + triples.size(); }

  friend bool operator==(const QuarticAncillaSet&, const QuarticAncillaSet&) = default;
};

/// Reads the r-variables set true. Each triple takes as intermediate the
/// true sub-pair shared with the most other true triples (then smallest).
inline QuarticAncillaSet decode_ancilla_set(const WMaxSatInstance& inst, std::span<const std::uint8_t> assignment) {
  if (assignment.size() != inst.vars.size()) throw InputError("model size does not match the instance");
  for (const WClause& c : inst.clauses) {
    if (inst.is_hard(c) && !clause_satisfied(c, assignment)) {
      std::ostringstream msg;
      msg << "model violates hard clause";
      for (int l : c.lits) msg << ' ' << l;
      throw InputError(msg.str());
    }
  }
  QuarticAncillaSet out;
  std::vector<Triple> chosen;
  for (std::size_t v = 0; v < inst.vars.size(); ++v) {
    if (!assignment[v]) continue;
    if (inst.vars[v].is_triple) chosen.push_back(inst.vars[v].triple);
    else out.pairs.insert(inst.vars[v].pair);
  }
  for (const Triple& t : chosen) {
    std::optional<Pair> best;
    int best_share = -1;
    for (const Pair& p : t.pairs()) {
      if (!out.pairs.contains(p)) continue;
      int share = 0;
      for (const Triple& u : chosen) share += (u != t && u.contains(p));
      if (share > best_share) {
        best = p;
        best_share = share;
      }
    }
    if (!best) throw InputError("triple ancilla has no intermediate pair");
    out.triples[t] = *best;
  }
  return out;
}

/// Rewrites every cubic term as y_ab x_c and every quartic term as y_ab y_cd
/// (two disjoint pairs, smallest split first) or y_abc x_d, adding
/// s(x_i, x_j, y_ij) for each pair ancilla and s(y_ij, x_k, y_ijk) for each
/// triple ancilla. Each penalty is scaled by 1 + the sum of |alpha| over all
/// terms that depend on that ancilla, directly or through a triple built on
/// it. Only ancillas actually used are registered: pairs first, then
/// triples, each sorted.
inline ReducedInstance apply_quartic_plan(const Polynomial& poly, const QuarticAncillaSet& qset) {
  if (poly.degree() > 4) throw InputError("quartic reduction handles degree <= 4");
  for (const auto& [t, p] : qset.triples) {
    if (!t.contains(p) || !qset.pairs.contains(p)) {
      std::ostringstream msg;
      msg << "triple ancilla " << t << " has an unusable intermediate " << p;
      throw InputError(msg.str());
    }
  }
  struct ViaPair { Pair p; int k; };
  struct ViaSplit { Pair a, b; };
  struct ViaTriple { Triple t; int l; };
  using Rewrite = std::variant<ViaPair, ViaSplit, ViaTriple>;

  std::map<Pair, Coeff> pair_load;
  std::map<Triple, Coeff> triple_load;
  std::vector<std::pair<Coeff, Rewrite>> rewrites;
  const int n = poly.num_vars();
  ReducedInstance out{Polynomial(n), {}, n};

  for (const auto& [m, c] : poly.terms()) {
    if (m.degree() <= 2) {
      out.quadratic.add(m, c);
      continue;
    }
    if (m.degree() == 3) {
      Triple t = triple_of(m);
      std::optional<Pair> use;
      for (const Pair& p : t.pairs()) {
        if (qset.pairs.contains(p)) {
          use = p;
          break;
        }
      }
      if (!use) {
        std::ostringstream msg;
        msg << "ancilla set cannot reduce cubic term " << t;
        throw InputError(msg.str());
      }
      pair_load[*use] += abs(c);
      rewrites.emplace_back(c, ViaPair{*use, t.other(*use)});
      continue;
    }
    Quad q = quad_of(m);
    bool done = false;
    for (const auto& [a, b] : q.pair_splits()) {
      if (qset.pairs.contains(a) && qset.pairs.contains(b)) {
        pair_load[a] += abs(c);
        pair_load[b] += abs(c);
        rewrites.emplace_back(c, ViaSplit{a, b});
        done = true;
        break;
      }
    }
    for (const Triple& t : q.triples()) {
      if (done) break;
      auto it = qset.triples.find(t);
      if (it == qset.triples.end()) continue;
      triple_load[t] += abs(c);
      pair_load[it->second] += abs(c);
      rewrites.emplace_back(c, ViaTriple{t, q.other(t)});
      done = true;
    }
    if (!done) {
      std::ostringstream msg;
      msg << "ancilla set cannot reduce quartic term " << q;
      throw InputError(msg.str());
    }
  }

  for (const auto& [p, load] : pair_load) out.registry.intern(AncillaDef::of_pair(p));
  for (const auto& [t, load] : triple_load) {
    const Pair& base = qset.triples.at(t);
    out.registry.intern(AncillaDef::triple_via(base, t.other(base)));
  }
  auto pair_var = [&](const Pair& p) { return VarRef::ancilla(*out.registry.find(AncillaDef::of_pair(p))); };
  auto triple_var = [&](const Triple& t) {
    const Pair& base = qset.triples.at(t);
    return VarRef::ancilla(*out.registry.find(AncillaDef::triple_via(base, t.other(base))));
  };
  auto comp = [](int i) { return VarRef::computational(static_cast<std::uint32_t>(i)); };

  for (const auto& [c, rw] : rewrites) {
    if (auto* v = std::get_if<ViaPair>(&rw)) out.quadratic.add(Monomial{pair_var(v->p), comp(v->k)}, c);
    if (auto* v = std::get_if<ViaSplit>(&rw)) out.quadratic.add(Monomial{pair_var(v->a), pair_var(v->b)}, c);
    if (auto* v = std::get_if<ViaTriple>(&rw)) out.quadratic.add(Monomial{triple_var(v->t), comp(v->l)}, c);
  }
  for (const auto& [p, load] : pair_load) {
    out.quadratic += penalty_s(comp(p.i), comp(p.j), pair_var(p), n).scaled(1 + load);
  }
  for (const auto& [t, load] : triple_load) {
    const Pair& base = qset.triples.at(t);
    out.quadratic += penalty_s(pair_var(base), comp(t.other(base)), triple_var(t), n).scaled(1 + load);
  }
  return out;
}

struct QuarticPlanResult {
  WMaxSatInstance instance;
  WMaxSatSolution solution;
  QuarticAncillaSet ancillas;
};

/// Encode, solve exactly, decode.
inline QuarticPlanResult plan_quartic(const Polynomial& poly, std::uint64_t node_budget = 1'000'000) {
  QuarticPlanResult r;
  r.instance = build_wmaxsat(poly);
  r.solution = solve_wmaxsat_exact(r.instance, node_budget);
  r.ancillas = decode_ancilla_set(r.instance, r.solution.assignment);
  return r;
}

}  // namespace pubo_forge
