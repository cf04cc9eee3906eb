#pragma once

#include <map>
#include <span>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "pubo_forge/error.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

using Rational = boost::multiprecision::cpp_rational;

/// offset + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j over spins z = 1 - 2x.
struct IsingForm {
  Rational offset = 0;
  std::map<VarRef, Rational> h;
  std::map<std::pair<VarRef, VarRef>, Rational> J;

  friend bool operator==(const IsingForm&, const IsingForm&) = default;
};

/// Substitutes x = (1 - z) / 2 into a polynomial of degree at most 2.
inline IsingForm to_ising(const Polynomial& poly) {
  if (poly.degree() > 2) throw InputError("to_ising needs a polynomial of degree <= 2");
  IsingForm out;
  auto bump = [](auto& map, const auto& key, const Rational& v) {
    auto [it, inserted] = map.try_emplace(key, v);
    if (!inserted) it->second += v;
    if (it->second == 0) map.erase(it);
  };
  for (const auto& [m, c] : poly.terms()) {
    Rational cr(c);
    switch (m.degree()) {
      case 0:
        out.offset += cr;
        break;
      case 1:
        // c (1 - z) / 2
        out.offset += cr / 2;
        bump(out.h, m[0], -cr / 2);
        break;
      case 2:
        // c (1 - z_a)(1 - z_b) / 4
        out.offset += cr / 4;
        bump(out.h, m[0], -cr / 4);
        bump(out.h, m[1], -cr / 4);
        bump(out.J, std::pair{m[0], m[1]}, cr / 4);
        break;
    }
  }
  return out;
}

/// Evaluates an IsingForm at the spins induced by a flat boolean assignment.
inline Rational evaluate_ising(const IsingForm& form, int n, std::span<const std::uint8_t> x) {
  auto spin = [&](VarRef v) -> int {
    std::size_t k = flat_index(v, n);
    if (k >= x.size()) throw InputError("assignment does not cover an Ising variable");
    return x[k] ? -1 : 1;
  };
  Rational total = form.offset;
  for (const auto& [v, hv] : form.h) total += hv * spin(v);
  for (const auto& [vw, j] : form.J) total += j * (spin(vw.first) * spin(vw.second));
  return total;
}

}  // namespace pubo_forge
