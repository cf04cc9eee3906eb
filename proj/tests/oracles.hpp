#pragma once

// Reference computations for the tests. Nothing here calls the planners,
// solvers or gadget code under test; inputs are plain index tuples.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pubo_forge/polynomial.hpp"

namespace oracle {

using Tri = std::array<int, 3>;
using Quad4 = std::array<int, 4>;
using Pr = std::pair<int, int>;

inline std::vector<Tri> triples_of(const pubo_forge::Polynomial& p) {
  std::vector<Tri> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() == 3) out.push_back({int(m[0].index), int(m[1].index), int(m[2].index)});
  }
  return out;
}

inline std::vector<Quad4> quads_of(const pubo_forge::Polynomial& p) {
  std::vector<Quad4> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() == 4) out.push_back({int(m[0].index), int(m[1].index), int(m[2].index), int(m[3].index)});
  }
  return out;
}

inline std::array<Pr, 3> pairs_in(const Tri& t) { return {Pr{t[0], t[1]}, Pr{t[0], t[2]}, Pr{t[1], t[2]}}; }

inline bool covered(const Tri& t, const std::set<Pr>& chosen) {
  for (const Pr& p : pairs_in(t)) {
    if (chosen.contains(p)) return true;
  }
  return false;
}

/// Minimum number of pairs hitting every triple, by trying every subset of
/// the candidate pairs in order of size. Only for small candidate sets.
inline int min_cover_by_subsets(const std::vector<Tri>& triples) {
  std::set<Pr> cand;
  for (const Tri& t : triples)
    for (const Pr& p : pairs_in(t)) cand.insert(p);
  const std::vector<Pr> c(cand.begin(), cand.end());
  if (c.size() > 24) throw std::invalid_argument("too many candidates for subset enumeration");
  int best = static_cast<int>(c.size());
  for (std::uint32_t mask = 0; mask < (1u << c.size()); ++mask) {
    const int size = std::popcount(mask);
    if (size >= best) continue;
    std::set<Pr> chosen;
    for (std::size_t b = 0; b < c.size(); ++b)
      if (mask >> b & 1u) chosen.insert(c[b]);
    if (std::all_of(triples.begin(), triples.end(), [&](const Tri& t) { return covered(t, chosen); })) best = size;
  }
  return best;
}

namespace detail {

inline bool cover_within(const std::vector<Tri>& triples, std::set<Pr>& chosen, int budget) {
  auto open = std::find_if(triples.begin(), triples.end(), [&](const Tri& t) { return !covered(t, chosen); });
  if (open == triples.end()) return true;
  if (budget == 0) return false;
  for (const Pr& p : pairs_in(*open)) {
    chosen.insert(p);
    const bool ok = cover_within(triples, chosen, budget - 1);
    chosen.erase(p);
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

/// True iff some set of at most k pairs hits every triple. Exhaustive: the
/// first unhit triple must be hit by one of its three pairs.
inline bool cover_exists(const std::vector<Tri>& triples, int k) {
  std::set<Pr> chosen;
  return detail::cover_within(triples, chosen, k);
}

/// Minimum cover by iterative deepening over cover_exists.
inline int min_cover_by_branching(const std::vector<Tri>& triples) {
  int k = 0;
  while (!cover_exists(triples, k)) ++k;
  return k;
}

/// Pairs and triples that may be used to reduce a degree-4 polynomial:
/// the pairs inside its cubic and quartic terms, the triples inside its
/// quartic terms.
struct QuarticCandidates {
  std::vector<Pr> pairs;
  std::vector<Tri> triples;
};

inline QuarticCandidates quartic_candidates(const std::vector<Tri>& cubic, const std::vector<Quad4>& quartic) {
  std::set<Pr> ps;
  std::set<Tri> ts;
  for (const Tri& t : cubic)
    for (const Pr& p : pairs_in(t)) ps.insert(p);
  for (const Quad4& q : quartic) {
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) ps.insert({q[a], q[b]});
    for (int skip = 3; skip >= 0; --skip) {
      Tri t{};
      int w = 0;
      for (int a = 0; a < 4; ++a)
        if (a != skip) t[w++] = q[a];
      ts.insert(t);
    }
  }
  return {{ps.begin(), ps.end()}, {ts.begin(), ts.end()}};
}

/// Whether a chosen set of pair and triple ancillas reduces everything:
/// every triple ancilla needs one of its pairs, every cubic term one of its
/// pairs, every quartic term two disjoint pairs or one of its triples.
inline bool sufficient(const std::vector<Tri>& cubic, const std::vector<Quad4>& quartic, const std::set<Pr>& pairs,
                       const std::set<Tri>& triples) {
  for (const Tri& t : triples) {
    if (!covered(t, pairs)) return false;
  }
  for (const Tri& t : cubic) {
    if (!covered(t, pairs)) return false;
  }
  for (const Quad4& q : quartic) {
    const auto [a, b, c, d] = q;
    const bool split = (pairs.contains({a, b}) && pairs.contains({c, d})) ||
                       (pairs.contains({a, c}) && pairs.contains({b, d})) ||
                       (pairs.contains({a, d}) && pairs.contains({b, c}));
    const bool via = triples.contains({a, b, c}) || triples.contains({a, b, d}) || triples.contains({a, c, d}) ||
                     triples.contains({b, c, d});
    if (!split && !via) return false;
  }
  return true;
}

/// Fewest ancillas for a degree-4 reduction, over all subsets of the
/// candidates.
inline int min_quartic_ancillas(const std::vector<Tri>& cubic, const std::vector<Quad4>& quartic) {
  const QuarticCandidates c = quartic_candidates(cubic, quartic);
  const std::size_t total = c.pairs.size() + c.triples.size();
  if (total > 22) throw std::invalid_argument("too many candidates for subset enumeration");
  int best = static_cast<int>(total);
  for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
    const int size = std::popcount(mask);
    if (size >= best) continue;
    std::set<Pr> ps;
    std::set<Tri> ts;
    for (std::size_t b = 0; b < total; ++b) {
      if (!(mask >> b & 1u)) continue;
      if (b < c.pairs.size()) ps.insert(c.pairs[b]);
      else ts.insert(c.triples[b - c.pairs.size()]);
    }
    if (sufficient(cubic, quartic, ps, ts)) best = size;
  }
  return best;
}

/// f(x) for every x in {0,1}^n, straight from the term list.
inline std::vector<pubo_forge::Coeff> truth_table(const pubo_forge::Polynomial& p) {
  const int n = p.num_vars();
  std::vector<pubo_forge::Coeff> out(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < out.size(); ++x) {
    pubo_forge::Coeff s = 0;
    for (const auto& [m, c] : p.terms()) {
      bool on = true;
      for (auto v : m.vars()) on = on && (x >> (v.index - 1) & 1u);
      if (on) s += c;
    }
    out[x] = s;
  }
  return out;
}

/// min over all ancilla settings of a reduced polynomial, per computational
/// x, by plain joint enumeration (no decomposition). Small inputs only.
inline std::vector<pubo_forge::Coeff> min_over_ancillas(const pubo_forge::Polynomial& q, std::size_t ancillas) {
  const int n = q.num_vars();
  std::vector<pubo_forge::Coeff> out(std::size_t{1} << n);
  std::vector<std::uint8_t> x(static_cast<std::size_t>(n) + ancillas);
  for (std::uint64_t cx = 0; cx < out.size(); ++cx) {
    std::optional<pubo_forge::Coeff> best;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << ancillas); ++a) {
      for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = cx >> i & 1u;
      for (std::size_t k = 0; k < ancillas; ++k) x[static_cast<std::size_t>(n) + k] = a >> k & 1u;
      pubo_forge::Coeff v = pubo_forge::evaluate(q, x);
      if (!best || v < *best) best = v;
    }
    out[cx] = *best;
  }
  return out;
}

}  // namespace oracle
