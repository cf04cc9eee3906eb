#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pubo_forge/error.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

inline constexpr int kDefaultEnumerationCap = 24;

namespace detail {

/// Polynomial compiled to (bitmask, int64) pairs over a chosen variable
/// order, for exhaustive enumeration. Only built when every partial sum is
/// guaranteed to fit in 63 bits.
struct MaskedTerms {
  std::vector<std::uint64_t> masks;
  std::vector<std::int64_t> coeffs;

  std::int64_t eval(std::uint64_t x) const {
    std::int64_t s = 0;
    for (std::size_t t = 0; t < masks.size(); ++t) {
      if ((x & masks[t]) == masks[t]) s += coeffs[t];
    }
    return s;
  }
};

inline std::optional<std::int64_t> to_i64(const Coeff& c) {
  static const Coeff lo = std::numeric_limits<std::int64_t>::min();
  static const Coeff hi = std::numeric_limits<std::int64_t>::max();
  if (c < lo || c > hi) return std::nullopt;
  return c.convert_to<std::int64_t>();
}

/// Compiles `poly` with flat variable order (computational then ancilla).
/// Returns nullopt if a sum of absolute coefficients could overflow.
inline std::optional<MaskedTerms> compile_masked(const Polynomial& poly) {
  MaskedTerms out;
  Coeff abs_sum = 0;
  for (const auto& [m, c] : poly.terms()) {
    std::uint64_t mask = 0;
    for (VarRef v : m.vars()) {
      std::size_t k = flat_index(v, poly.num_vars());
      if (k >= 64) return std::nullopt;
      mask |= std::uint64_t{1} << k;
    }
    abs_sum += abs(c);
    out.masks.push_back(mask);
    out.coeffs.push_back(c.convert_to<std::int64_t>());
  }
  if (abs_sum > Coeff(std::int64_t{1} << 62)) return std::nullopt;
  return out;
}

inline std::vector<std::uint8_t> unpack(std::uint64_t mask, std::size_t width) {
  std::vector<std::uint8_t> x(width);
  for (std::size_t k = 0; k < width; ++k) x[k] = (mask >> k) & 1u;
  return x;
}

}  // namespace detail

/// Minimum value and complete argmin set of a polynomial, by exhaustive
/// enumeration. Minimizers are bitmasks over the flat variable order (bit k
/// is flat index k).
struct BruteForceResult {
  Coeff min_value = 0;
  std::size_t num_vars = 0;
  std::vector<std::uint64_t> minimizers;

  std::vector<std::uint8_t> assignment(std::size_t k) const { return detail::unpack(minimizers[k], num_vars); }
};

inline BruteForceResult brute_force_minima(const Polynomial& poly, int cap = kDefaultEnumerationCap) {
  const std::size_t width = static_cast<std::size_t>(poly.num_vars()) + poly.ancilla_extent();
  if (width > static_cast<std::size_t>(cap)) {
    throw CapExceeded("brute force over " + std::to_string(width) + " variables exceeds cap " + std::to_string(cap));
  }
  BruteForceResult r;
  r.num_vars = width;
  const std::uint64_t count = std::uint64_t{1} << width;
  if (auto fast = detail::compile_masked(poly)) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::uint64_t x = 0; x < count; ++x) {
      std::int64_t v = fast->eval(x);
      if (v < best) {
        best = v;
        r.minimizers.clear();
      }
      if (v == best) r.minimizers.push_back(x);
    }
    r.min_value = best;
    return r;
  }
  std::optional<Coeff> best;
  for (std::uint64_t x = 0; x < count; ++x) {
    auto assign = detail::unpack(x, width);
    Coeff v = evaluate(poly, assign);
    if (!best || v < *best) {
      best = v;
      r.minimizers.clear();
    }
    if (v == *best) r.minimizers.push_back(x);
  }
  r.min_value = *best;
  return r;
}

}  // namespace pubo_forge
