#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "pubo_forge/error.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/plan.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

/// Working state of the precision-oriented greedy planner: the cubic terms
/// still unassigned (A), the partial assignment K, and the source polynomial
/// that supplies alpha on triples and pairs.
struct GreedyState {
  const Polynomial* poly = nullptr;
  std::set<Triple> A;
  std::map<Pair, std::set<int>> K;

  explicit GreedyState(const Polynomial& p) : poly(&p) {
    for (const Triple& t : detail::cubic_terms(p)) A.insert(t);
  }

  Coeff alpha(const Triple& t) const { return poly->coefficient(t.monomial()); }
  Coeff alpha(const Pair& p) const { return poly->coefficient(Monomial::of({p.i, p.j})); }
};

/// Cost of collapsing term a with pair b given the terms already on b:
/// alpha(b) + 3 + max(sum of positive theta, -sum of negative theta), theta
/// ranging over the coefficients of b's terms plus alpha(a). alpha(b) is
/// signed, so pairs whose own coefficient is negative are cheaper.
inline Coeff cost_w(const Triple& a, const Pair& b, const GreedyState& state) {
  if (!a.contains(b)) throw InputError("cost_w: pair is not inside the term");
  Coeff pos = 0, neg = 0;
  auto accumulate = [&](const Coeff& theta) {
    if (theta > 0) pos += theta;
    else neg -= theta;
  };
  if (auto it = state.K.find(b); it != state.K.end()) {
    for (int k : it->second) accumulate(state.alpha(Triple(b.i, b.j, k)));
  }
  accumulate(state.alpha(a));
  return state.alpha(b) + 3 + (pos > neg ? pos : neg);
}

/// Greedy collapse-pair selection aimed at low control precision.
///
/// Each round: for every unassigned term a, Gamma(a) is the set of its pairs
/// with least cost_w; Delta(a) is the member of Gamma(a) contained in the
/// fewest unassigned terms (then smallest pair). The term whose
/// cost_w(a, Delta(a)) is largest (then smallest term) is assigned to
/// Delta(a) and removed. Deltas are derived from the final K.
inline ReductionPlan greedy_precision_plan(const Polynomial& poly, GadgetMode mode = GadgetMode::SingleAncilla) {
  if (poly.degree() > 3) throw InputError("the precision planner handles cubic polynomials only");
  GreedyState state(poly);
  while (!state.A.empty()) {
    std::optional<Triple> d;
    Pair d_pair;
    Coeff d_cost = 0;
    for (const Triple& a : state.A) {
      std::array<Coeff, 3> w;
      auto pairs = a.pairs();
      for (int t = 0; t < 3; ++t) w[t] = cost_w(a, pairs[t], state);
      Coeff wmin = std::min({w[0], w[1], w[2]});
      std::optional<Pair> delta;
      std::size_t delta_count = 0;
      for (int t = 0; t < 3; ++t) {
        if (w[t] != wmin) continue;
        std::size_t count = 0;
        for (const Triple& other : state.A) count += other.contains(pairs[t]);
        if (!delta || count < delta_count) {
          delta = pairs[t];
          delta_count = count;
        }
      }
      if (!d || wmin > d_cost) {
        d = a;
        d_pair = *delta;
        d_cost = wmin;
      }
    }
    state.K[d_pair].insert(d->other(d_pair));
    state.A.erase(*d);
  }
  return make_plan(poly, std::move(state.K), mode);
}

/// Baseline: each cubic term is collapsed by one of its three pairs chosen
/// uniformly at random (terms visited in order, seeded mt19937_64).
inline ReductionPlan arbitrary_plan(const Polynomial& poly, std::uint64_t seed,
                                    GadgetMode mode = GadgetMode::SingleAncilla) {
  if (poly.degree() > 3) throw InputError("the baseline planner handles cubic polynomials only");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 2);
  std::map<Pair, std::set<int>> K;
  for (const Triple& t : detail::cubic_terms(poly)) {
    Pair p = t.pairs()[static_cast<std::size_t>(pick(rng))];
    K[p].insert(t.other(p));
  }
  return make_plan(poly, std::move(K), mode);
}

}  // namespace pubo_forge
