#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <span>
#include <vector>

#include "pubo_forge/ancilla.hpp"
#include "pubo_forge/error.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

/// Penalty s(x, y, z) = 3z + xy - 2xz - 2yz. Zero exactly when z = xy and at
/// least 1 otherwise.
inline Polynomial penalty_s(VarRef x, VarRef y, VarRef z, int n) {
  if (x == y || x == z || y == z) throw InputError("penalty_s needs three distinct variables");
  Polynomial p(n);
  p.add(Monomial{z}, 3);
  p.add(Monomial{x, y}, 1);
  p.add(Monomial{x, z}, -2);
  p.add(Monomial{y, z}, -2);
  return p;
}

/// Outcome of the exhaustive search for integer quadratic penalties on three
/// variables (x, y, z): f = 0 iff z = xy, f >= 1 otherwise.
struct PenaltySearchResult {
  /// Smallest achievable max |coefficient| over valid penalties (0 if none).
  int min_max_abs = 0;
  /// Coefficients (a_x, a_y, a_z, a_xy, a_xz, a_yz) of every valid penalty
  /// attaining min_max_abs.
  std::vector<std::array<int, 6>> optima;
  std::size_t valid_count = 0;
};

inline PenaltySearchResult search_penalties(int bound) {
  PenaltySearchResult r;
  r.min_max_abs = bound + 1;
  std::array<int, 6> a{};
  const int span = 2 * bound + 1;
  long long total = 1;
  for (int t = 0; t < 6; ++t) total *= span;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int t = 0; t < 6; ++t) {
      a[t] = static_cast<int>(c % span) - bound;
      c /= span;
    }
    bool valid = true;
    for (int row = 0; row < 8 && valid; ++row) {
      int x = row & 1, y = (row >> 1) & 1, z = (row >> 2) & 1;
      int f = a[0] * x + a[1] * y + a[2] * z + a[3] * x * y + a[4] * x * z + a[5] * y * z;
      valid = (z == x * y) ? f == 0 : f >= 1;
    }
    if (!valid) continue;
    ++r.valid_count;
    int mx = 0;
    for (int v : a) mx = std::max(mx, std::abs(v));
    if (mx < r.min_max_abs) {
      r.min_max_abs = mx;
      r.optima.clear();
    }
    if (mx == r.min_max_abs) r.optima.push_back(a);
  }
  if (r.valid_count == 0) r.min_max_abs = 0;
  return r;
}

/// Exhaustively confirms that no valid penalty with coefficients in [-6, 6]
/// has a smaller largest coefficient than s. Returns that minimum (3).
inline int verify_penalty_minimality() { return search_penalties(6).min_max_abs; }

/// Smallest sound penalty scale for a group of cubic terms sharing one
/// ancilla: 1 + max(sum of positive coefficients, -sum of negative ones).
inline Coeff delta_for_group(std::span<const Coeff> coeffs) {
  if (coeffs.empty()) throw InputError("delta_for_group needs at least one coefficient");
  Coeff pos = 0, neg = 0;
  for (const Coeff& c : coeffs) {
    if (c == 0) throw InputError("delta_for_group coefficients must be nonzero");
    if (c > 0) pos += c;
    else neg -= c;
  }
  return 1 + (pos > neg ? pos : neg);
}

inline Coeff delta_for_group(std::initializer_list<Coeff> coeffs) {
  std::vector<Coeff> v(coeffs);
  return delta_for_group(std::span<const Coeff>(v));
}

/// Integer three-way split of alpha, keyed on alpha mod 3 taken in {0, 1, 2}:
///   0: (a/3, a/3, a/3)   1: ((a+2)/3, (a-1)/3, (a-1)/3)   2: ((a+1)/3, (a+1)/3, (a-2)/3)
inline std::array<Coeff, 3> beta_split(const Coeff& alpha) {
  if (alpha == 0) throw InputError("beta_split needs a nonzero coefficient");
  Coeff r = alpha % 3;
  if (r < 0) r += 3;
  if (r == 0) return {alpha / 3, alpha / 3, alpha / 3};
  if (r == 1) return {(alpha + 2) / 3, (alpha - 1) / 3, (alpha - 1) / 3};
  return {(alpha + 1) / 3, (alpha + 1) / 3, (alpha - 2) / 3};
}

struct SingleTermReduction {
  Polynomial fragment;
  AncillaRegistry registry;
};

/// alpha x_i x_j x_k -> alpha y x_k + (1 + |alpha|) s(x_i, x_j, y) with a
/// fresh ancilla y = x_i x_j for the collapse pair {i, j}.
inline SingleTermReduction reduce_single_term(const Coeff& alpha, const Triple& term, const Pair& collapse, int n) {
  if (alpha == 0) throw InputError("reduce_single_term needs a nonzero coefficient");
  if (!term.contains(collapse)) throw InputError("collapse pair is not inside the term");
  SingleTermReduction out{Polynomial(n), {}};
  VarRef y = out.registry.var(AncillaDef::of_pair(collapse));
  VarRef xk = VarRef::computational(static_cast<std::uint32_t>(term.other(collapse)));
  out.fragment.add(Monomial{y, xk}, alpha);
  out.fragment += penalty_s(VarRef::computational(collapse.i), VarRef::computational(collapse.j), y, n)
                      .scaled(1 + abs(alpha));
  return out;
}

}  // namespace pubo_forge
