#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <ostream>
#include <utility>

#include "pubo_forge/error.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

/// Unordered pair {i, j} of computational indices, stored with i < j.
struct Pair {
  int i = 0;
  int j = 0;

  Pair() = default;
  Pair(int a, int b) : i(std::min(a, b)), j(std::max(a, b)) {
    if (a == b) throw InputError("pair needs two distinct indices");
  }

  bool contains(int k) const { return k == i || k == j; }

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Unordered triple {a, b, c} of computational indices, stored sorted.
struct Triple {
  std::array<int, 3> v{};

  Triple() = default;
  Triple(int a, int b, int c) : v{a, b, c} {
    std::sort(v.begin(), v.end());
    if (v[0] == v[1] || v[1] == v[2]) throw InputError("triple needs three distinct indices");
  }

  bool contains(int k) const { return k == v[0] || k == v[1] || k == v[2]; }
  bool contains(const Pair& p) const { return contains(p.i) && contains(p.j); }

  /// The three 2-subsets, in lexicographic order.
  std::array<Pair, 3> pairs() const { return {Pair(v[0], v[1]), Pair(v[0], v[2]), Pair(v[1], v[2])}; }

  /// The index of this triple that is not in `p` (p must be a subset).
  int other(const Pair& p) const {
    for (int k : v) {
      if (!p.contains(k)) return k;
    }
    throw InputError("pair is not a subset of the triple");
  }

  Monomial monomial() const { return Monomial::of({v[0], v[1], v[2]}); }

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Sorted 4-set of computational indices.
struct Quad {
  std::array<int, 4> v{};

  Quad() = default;
  Quad(int a, int b, int c, int d) : v{a, b, c, d} {
    std::sort(v.begin(), v.end());
    if (v[0] == v[1] || v[1] == v[2] || v[2] == v[3]) throw InputError("quad needs four distinct indices");
  }

  bool contains(int k) const { return std::find(v.begin(), v.end(), k) != v.end(); }

  /// The three ways to split into two disjoint pairs, lexicographic by first pair.
  std::array<std::pair<Pair, Pair>, 3> pair_splits() const {
    return {std::pair{Pair(v[0], v[1]), Pair(v[2], v[3])}, std::pair{Pair(v[0], v[2]), Pair(v[1], v[3])},
            std::pair{Pair(v[0], v[3]), Pair(v[1], v[2])}};
  }

  std::array<Triple, 4> triples() const {
    return {Triple(v[0], v[1], v[2]), Triple(v[0], v[1], v[3]), Triple(v[0], v[2], v[3]), Triple(v[1], v[2], v[3])};
  }

  std::array<Pair, 6> pairs() const {
    return {Pair(v[0], v[1]), Pair(v[0], v[2]), Pair(v[0], v[3]),
            Pair(v[1], v[2]), Pair(v[1], v[3]), Pair(v[2], v[3])};
  }

  int other(const Triple& t) const {
    for (int k : v) {
      if (!t.contains(k)) return k;
    }
    throw InputError("triple is not a subset of the quad");
  }

  Monomial monomial() const { return Monomial::of({v[0], v[1], v[2], v[3]}); }

  friend auto operator<=>(const Quad&, const Quad&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Pair& p) { return os << "{" << p.i << "," << p.j << "}"; }
inline std::ostream& operator<<(std::ostream& os, const Triple& t) {
  return os << "{" << t.v[0] << "," << t.v[1] << "," << t.v[2] << "}";
}
inline std::ostream& operator<<(std::ostream& os, const Quad& q) {
  return os << "{" << q.v[0] << "," << q.v[1] << "," << q.v[2] << "," << q.v[3] << "}";
}

/// Computational indices of a monomial that has no ancilla variables.
inline std::vector<int> computational_indices(const Monomial& m) {
  std::vector<int> out;
  for (VarRef v : m.vars()) {
    if (v.is_ancilla()) throw InputError("monomial references an ancilla variable");
    out.push_back(static_cast<int>(v.index));
  }
  return out;
}

inline Triple triple_of(const Monomial& m) {
  auto ix = computational_indices(m);
  if (ix.size() != 3) throw InputError("monomial is not cubic");
  return Triple(ix[0], ix[1], ix[2]);
}

inline Quad quad_of(const Monomial& m) {
  auto ix = computational_indices(m);
  if (ix.size() != 4) throw InputError("monomial is not quartic");
  return Quad(ix[0], ix[1], ix[2], ix[3]);
}

}  // namespace pubo_forge
