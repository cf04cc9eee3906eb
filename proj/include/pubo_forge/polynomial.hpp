#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pubo_forge/error.hpp"

namespace pubo_forge {

/// Exact integer coefficient. Reductions only add and compare, so nothing here
/// ever rounds.
using Coeff = boost::multiprecision::cpp_int;

enum class VarKind : std::uint8_t { Computational = 0, Ancilla = 1 };

/// A variable of a (possibly reduced) polynomial. Computational variables are
/// 1-based; ancilla variables index densely into an AncillaRegistry. All
/// computational variables order before all ancillas.
struct VarRef {
  VarKind kind = VarKind::Computational;
  std::uint32_t index = 0;

  static constexpr VarRef computational(std::uint32_t i) { return {VarKind::Computational, i}; }
  static constexpr VarRef ancilla(std::uint32_t a) { return {VarKind::Ancilla, a}; }

  constexpr bool is_ancilla() const { return kind == VarKind::Ancilla; }

  friend constexpr auto operator<=>(const VarRef&, const VarRef&) = default;
};

/// Position of `v` in a flat assignment vector: computational x_i at i-1,
/// ancilla a at n+a.
inline std::size_t flat_index(VarRef v, int n) {
  return v.is_ancilla() ? static_cast<std::size_t>(n) + v.index : v.index - 1;
}

inline std::ostream& operator<<(std::ostream& os, VarRef v) {
  return os << (v.is_ancilla() ? "y" : "x") << v.index;
}

/// Product of up to four distinct variables, kept sorted. Repeated variables
/// collapse (x*x = x).
class Monomial {
 public:
  static constexpr std::size_t kMaxDegree = 4;

  Monomial() = default;
  Monomial(std::initializer_list<VarRef> vars) { assign(vars); }
  explicit Monomial(std::span<const VarRef> vars) { assign(vars); }

  /// Monomial over computational indices, e.g. of({1, 2, 3}) = x1 x2 x3.
  static Monomial of(std::initializer_list<int> indices) {
    std::vector<VarRef> v;
    for (int i : indices) v.push_back(VarRef::computational(static_cast<std::uint32_t>(i)));
    return Monomial(std::span<const VarRef>(v));
  }

  std::size_t degree() const { return size_; }
  std::span<const VarRef> vars() const { return {vars_.data(), size_}; }
  VarRef operator[](std::size_t k) const { return vars_[k]; }

  bool contains(VarRef v) const {
    return std::find(vars_.begin(), vars_.begin() + size_, v) != vars_.begin() + size_;
  }
  bool has_ancilla() const {
    return std::any_of(vars_.begin(), vars_.begin() + size_, [](VarRef v) { return v.is_ancilla(); });
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::ranges::equal(a.vars(), b.vars());
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    auto av = a.vars();
    auto bv = b.vars();
    return std::lexicographical_compare_three_way(av.begin(), av.end(), bv.begin(), bv.end());
  }

 private:
  template <typename Range>
  void assign(const Range& vars) {
    std::vector<VarRef> tmp(vars.begin(), vars.end());
    std::sort(tmp.begin(), tmp.end());
    tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
    if (tmp.size() > kMaxDegree) {
      throw InputError("monomial of degree " + std::to_string(tmp.size()) + " exceeds the supported maximum of 4");
    }
    size_ = tmp.size();
    std::copy(tmp.begin(), tmp.end(), vars_.begin());
  }

  std::array<VarRef, kMaxDegree> vars_{};
  std::size_t size_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Monomial& m) {
  if (m.degree() == 0) return os << "1";
  for (std::size_t k = 0; k < m.degree(); ++k) os << m[k];
  return os;
}

/// Multilinear pseudo-Boolean polynomial with exact integer coefficients over
/// n computational variables (plus any ancillas a reduction introduced).
/// Only nonzero coefficients are stored; iteration is lexicographic.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Coeff>;

  Polynomial() = default;
  explicit Polynomial(int num_vars) : n_(num_vars) {
    if (num_vars < 0) throw InputError("negative variable count");
  }

  int num_vars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Monomial& m, const Coeff& c) {
    for (VarRef v : m.vars()) {
      if (!v.is_ancilla() && (v.index < 1 || v.index > static_cast<std::uint32_t>(n_))) {
        throw InputError("variable index " + std::to_string(v.index) + " outside [1, " + std::to_string(n_) + "]");
      }
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add(m, c);
    return *this;
  }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  int degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return static_cast<int>(d);
  }

  /// One past the largest ancilla index referenced (0 when there are none).
  std::size_t ancilla_extent() const {
    std::size_t extent = 0;
    for (const auto& [m, c] : terms_) {
      for (VarRef v : m.vars()) {
        if (v.is_ancilla()) extent = std::max<std::size_t>(extent, v.index + 1);
      }
    }
    return extent;
  }

  Polynomial scaled(const Coeff& k) const {
    Polynomial out(n_);
    for (const auto& [m, c] : terms_) out.add(m, c * k);
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  int n_ = 0;
  TermMap terms_;
};

inline Polynomial operator+(Polynomial a, const Polynomial& b) {
  a += b;
  return a;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    os << c;
    if (m.degree() > 0) os << "*" << m;
    first = false;
  }
  if (first) os << "0";
  return os;
}

/// Exact value of `poly` at a flat assignment (see flat_index). Throws if the
/// assignment does not cover a referenced variable.
inline Coeff evaluate(const Polynomial& poly, std::span<const std::uint8_t> x) {
  Coeff total = 0;
  for (const auto& [m, c] : poly.terms()) {
    bool on = true;
    for (VarRef v : m.vars()) {
      std::size_t k = flat_index(v, poly.num_vars());
      if (k >= x.size()) {
        std::ostringstream msg;
        msg << "assignment does not cover variable " << v;
        throw InputError(msg.str());
      }
      on = on && x[k];
    }
    if (on) total += c;
  }
  return total;
}

inline Coeff evaluate(const Polynomial& poly, std::initializer_list<std::uint8_t> x) {
  std::vector<std::uint8_t> v(x);
  return evaluate(poly, std::span<const std::uint8_t>(v));
}

}  // namespace pubo_forge
