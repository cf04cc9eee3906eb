#pragma once

// Small random instances for property tests, drawn independently of the
// benchmark generator.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pubo_forge/polynomial.hpp"

namespace fixture {

inline int nonzero(std::mt19937_64& rng, int bound = 8) {
  std::uniform_int_distribution<int> d(1, 2 * bound);
  const int v = d(rng);
  return v <= bound ? v - bound - 1 : v - bound;
}

/// `terms` distinct monomials of the given degree over n variables, plus
/// optional lower-degree noise.
inline pubo_forge::Polynomial random_terms(std::mt19937_64& rng, int n, int degree, int terms, int noise = 0) {
  std::vector<std::vector<int>> all;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == degree) {
      all.push_back(cur);
      return;
    }
    for (int i = start; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  std::shuffle(all.begin(), all.end(), rng);
  pubo_forge::Polynomial p(n);
  for (int t = 0; t < terms && t < static_cast<int>(all.size()); ++t) {
    std::vector<std::uint32_t> idx(all[t].begin(), all[t].end());
    std::vector<pubo_forge::VarRef> vs;
    for (auto i : idx) vs.push_back(pubo_forge::VarRef::computational(i));
    p.add(pubo_forge::Monomial(std::span<const pubo_forge::VarRef>(vs)), nonzero(rng));
  }
  std::uniform_int_distribution<int> var(1, n), deg(0, 2);
  for (int t = 0; t < noise; ++t) {
    std::vector<pubo_forge::VarRef> vs;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) vs.push_back(pubo_forge::VarRef::computational(static_cast<std::uint32_t>(var(rng))));
    p.add(pubo_forge::Monomial(std::span<const pubo_forge::VarRef>(vs)), nonzero(rng));
  }
  return p;
}

inline pubo_forge::Polynomial random_cubic(std::mt19937_64& rng, int n, int lambda, int noise = 0) {
  return random_terms(rng, n, 3, lambda, noise);
}

}  // namespace fixture
