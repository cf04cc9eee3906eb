#pragma once

#include <utility>
#include <vector>

#include <boost/integer/common_factor_rt.hpp>

#include "pubo_forge/error.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

/// Control precision of a polynomial: the largest coefficient magnitude
/// divided by the gcd of all coefficients. For reference, 4 bits of
/// precision resolve 16 distinct magnitudes.
struct PrecisionReport {
  Coeff max_abs_coeff = 0;
  Coeff gcd_all = 1;
  Coeff control_precision = 0;
  /// Every quadratic term with its coefficient, in monomial order.
  std::vector<std::pair<Monomial, Coeff>> per_pair_breakdown;
};

inline constexpr int kPrecisionBitsReference = 4;
inline constexpr int kResolvableMagnitudesAt4Bits = 1 << kPrecisionBitsReference;

struct PrecisionOptions {
  /// Whether the constant term participates in the max and the gcd.
  bool include_offset = true;
};

inline PrecisionReport control_precision(const Polynomial& poly, PrecisionOptions opts = {}) {
  PrecisionReport r;
  Coeff g = 0;
  bool any = false;
  for (const auto& [m, c] : poly.terms()) {
    if (m.degree() == 0 && !opts.include_offset) continue;
    Coeff a = abs(c);
    g = any ? Coeff(boost::multiprecision::gcd(g, a)) : a;
    if (a > r.max_abs_coeff) r.max_abs_coeff = a;
    any = true;
    if (m.degree() == 2) r.per_pair_breakdown.emplace_back(m, c);
  }
  if (!any) throw InputError("control precision of an empty polynomial is undefined");
  r.gcd_all = g;
  r.control_precision = r.max_abs_coeff / g;
  return r;
}

}  // namespace pubo_forge
