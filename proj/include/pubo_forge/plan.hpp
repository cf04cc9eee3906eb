#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pubo_forge/ancilla.hpp"
#include "pubo_forge/error.hpp"
#include "pubo_forge/gadgets.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

enum class GadgetMode { SingleAncilla, TripleAncilla };

inline const char* to_string(GadgetMode m) { return m == GadgetMode::SingleAncilla ? "single" : "triple"; }

/// Which pair collapses each cubic term, and the penalty scale per ancilla.
/// K maps a collapse pair {i, j} to the third indices k of the terms
/// x_i x_j x_k it reduces. deltas is keyed by (pair, m); m is always 1 in
/// SingleAncilla mode and ranges over 1..3 in TripleAncilla mode.
struct ReductionPlan {
  GadgetMode mode = GadgetMode::SingleAncilla;
  std::map<Pair, std::set<int>> K;
  std::map<std::pair<Pair, int>, Coeff> deltas;

  std::size_t ancilla_count() const { return K.size() * (mode == GadgetMode::SingleAncilla ? 1 : 3); }

  friend bool operator==(const ReductionPlan&, const ReductionPlan&) = default;
};

/// A quadratic polynomial over computational and ancilla variables together
/// with what each ancilla means. The first source_n flat variables are the
/// computational ones, so decoding is a projection.
struct ReducedInstance {
  Polynomial quadratic;
  AncillaRegistry registry;
  int source_n = 0;

  std::size_t total_vars() const { return static_cast<std::size_t>(source_n) + registry.size(); }

  std::vector<std::uint8_t> decode(std::span<const std::uint8_t> x) const {
    if (x.size() < static_cast<std::size_t>(source_n)) throw InputError("assignment shorter than the source variables");
    return {x.begin(), x.begin() + source_n};
  }

  friend bool operator==(const ReducedInstance&, const ReducedInstance&) = default;
};

namespace detail {

inline Coeff group_delta(std::span<const Coeff> coeffs) {
  Coeff pos = 0, neg = 0;
  for (const Coeff& c : coeffs) {
    if (c > 0) pos += c;
    else neg -= c;
  }
  return 1 + (pos > neg ? pos : neg);
}

inline std::vector<Triple> cubic_terms(const Polynomial& poly) {
  std::vector<Triple> out;
  for (const auto& [m, c] : poly.terms()) {
    if (m.degree() == 3) out.push_back(triple_of(m));
  }
  return out;
}

inline Coeff cubic_coeff(const Polynomial& poly, const Pair& p, int k) {
  return poly.coefficient(Triple(p.i, p.j, k).monomial());
}

}  // namespace detail

/// Throws unless every nonzero cubic term of `poly` is collapsed by exactly
/// one pair of K, and every entry of K names a nonzero cubic term.
inline void check_coverage(const Polynomial& poly, const std::map<Pair, std::set<int>>& K) {
  if (poly.degree() > 3) throw InputError("cubic reduction plans cannot cover degree-4 terms");
  std::map<Triple, int> hits;
  for (const auto& [p, ks] : K) {
    if (ks.empty()) {
      std::ostringstream msg;
      msg << "plan has an empty index set for pair " << p;
      throw InputError(msg.str());
    }
    for (int k : ks) {
      if (p.contains(k)) throw InputError("plan index repeats a pair member");
      Triple t(p.i, p.j, k);
      if (poly.coefficient(t.monomial()) == 0) {
        std::ostringstream msg;
        msg << "plan collapses " << t << " which is not a term";
        throw InputError(msg.str());
      }
      ++hits[t];
    }
  }
  for (const Triple& t : detail::cubic_terms(poly)) {
    auto it = hits.find(t);
    int h = it == hits.end() ? 0 : it->second;
    if (h != 1) {
      std::ostringstream msg;
      msg << "cubic term " << t << (h == 0 ? " is not covered by the plan" : " is covered more than once");
      throw InputError(msg.str());
    }
  }
}

/// Sound minimal penalty scales for K: one group delta per pair (single
/// gadget) or per pair and copy m over the beta splits (triple gadget).
inline std::map<std::pair<Pair, int>, Coeff> compute_deltas(const Polynomial& poly,
                                                           const std::map<Pair, std::set<int>>& K,
                                                           GadgetMode mode) {
  std::map<std::pair<Pair, int>, Coeff> deltas;
  for (const auto& [p, ks] : K) {
    if (mode == GadgetMode::SingleAncilla) {
      std::vector<Coeff> group;
      for (int k : ks) group.push_back(detail::cubic_coeff(poly, p, k));
      deltas[{p, 1}] = delta_for_group(std::span<const Coeff>(group));
    } else {
      std::array<std::vector<Coeff>, 3> groups;
      for (int k : ks) {
        auto beta = beta_split(detail::cubic_coeff(poly, p, k));
        for (int m = 0; m < 3; ++m) groups[m].push_back(beta[m]);
      }
      for (int m = 0; m < 3; ++m) deltas[{p, m + 1}] = detail::group_delta(groups[m]);
    }
  }
  return deltas;
}

/// Builds a validated plan from an assignment K, with deltas computed.
inline ReductionPlan make_plan(const Polynomial& poly, std::map<Pair, std::set<int>> K, GadgetMode mode) {
  check_coverage(poly, K);
  ReductionPlan plan;
  plan.mode = mode;
  plan.deltas = compute_deltas(poly, K, mode);
  plan.K = std::move(K);
  return plan;
}

/// Applies a plan: every cubic term is replaced through its collapse-pair
/// ancilla(s) and each ancilla gets its scaled penalty. Lower-degree terms
/// pass through unchanged (and merge with penalty x_i x_j contributions).
/// The plan's deltas are used as given.
inline ReducedInstance apply_plan(const Polynomial& poly, const ReductionPlan& plan) {
  check_coverage(poly, plan.K);
  const int n = poly.num_vars();
  ReducedInstance out{Polynomial(n), {}, n};
  for (const auto& [m, c] : poly.terms()) {
    if (m.degree() <= 2) out.quadratic.add(m, c);
  }
  const int copies = plan.mode == GadgetMode::SingleAncilla ? 1 : 3;
  for (const auto& [p, ks] : plan.K) {
    VarRef xi = VarRef::computational(p.i);
    VarRef xj = VarRef::computational(p.j);
    for (int m = 1; m <= copies; ++m) {
      auto dit = plan.deltas.find({p, m});
      if (dit == plan.deltas.end() || dit->second <= 0) {
        std::ostringstream msg;
        msg << "plan has no positive delta for pair " << p << " copy " << m;
        throw InputError(msg.str());
      }
      VarRef y = out.registry.var(plan.mode == GadgetMode::SingleAncilla ? AncillaDef::of_pair(p)
                                                                         : AncillaDef::copy(p, m));
      for (int k : ks) {
        Coeff alpha = detail::cubic_coeff(poly, p, k);
        Coeff coeff = plan.mode == GadgetMode::SingleAncilla ? alpha : beta_split(alpha)[m - 1];
        out.quadratic.add(Monomial{y, VarRef::computational(k)}, coeff);
      }
      out.quadratic += penalty_s(xi, xj, y, n).scaled(dit->second);
    }
  }
  return out;
}

/// Largest coefficient magnitude the plan introduces:
/// max( max over ancillas of 3 delta, max over pairs of |alpha_ij + sum_m delta_ij^(m)| ).
inline Coeff max_introduced_coefficient(const ReductionPlan& plan, const Polynomial& poly) {
  check_coverage(poly, plan.K);
  Coeff best = 0;
  const int copies = plan.mode == GadgetMode::SingleAncilla ? 1 : 3;
  for (const auto& [p, ks] : plan.K) {
    Coeff sum = 0;
    for (int m = 1; m <= copies; ++m) {
      auto it = plan.deltas.find({p, m});
      if (it == plan.deltas.end()) throw InputError("plan is missing a delta");
      best = std::max(best, Coeff(3 * it->second));
      sum += it->second;
    }
    Coeff pair_coeff = abs(poly.coefficient(Monomial::of({p.i, p.j})) + sum);
    best = std::max(best, pair_coeff);
  }
  return best;
}

/// Degree <= 2 input: the reduction is the identity.
inline ReducedInstance identity_reduction(const Polynomial& poly) {
  if (poly.degree() > 2) throw InputError("identity reduction needs degree <= 2");
  return ReducedInstance{poly, {}, poly.num_vars()};
}

}  // namespace pubo_forge
