#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "pubo_forge/error.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

/// What an ancilla variable stands for.
///   Pair          y = x_i x_j
///   PairCopy      m-th copy (m in 1..3) of x_i x_j, for the split gadget
///   TripleViaPair y = (x_i x_j) x_k, built on the Pair ancilla for {i, j}
struct AncillaDef {
  enum class Kind : std::uint8_t { Pair = 0, PairCopy = 1, TripleViaPair = 2 };

  Kind kind = Kind::Pair;
  pubo_forge::Pair pair;
  int m = 0;
  int k = 0;

  static AncillaDef of_pair(pubo_forge::Pair p) { return {Kind::Pair, p, 0, 0}; }
  static AncillaDef copy(pubo_forge::Pair p, int m) {
    if (m < 1 || m > 3) throw InputError("pair copy index must be in 1..3");
    return {Kind::PairCopy, p, m, 0};
  }
  static AncillaDef triple_via(pubo_forge::Pair base, int k) {
    if (base.contains(k)) throw InputError("triple ancilla needs k outside its base pair");
    return {Kind::TripleViaPair, base, 0, k};
  }

  Triple triple() const { return Triple(pair.i, pair.j, k); }

  friend auto operator<=>(const AncillaDef&, const AncillaDef&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const AncillaDef& d) {
  switch (d.kind) {
    case AncillaDef::Kind::Pair:
      return os << "x" << d.pair.i << "x" << d.pair.j;
    case AncillaDef::Kind::PairCopy:
      return os << "x" << d.pair.i << "x" << d.pair.j << "^(" << d.m << ")";
    case AncillaDef::Kind::TripleViaPair:
      return os << "(x" << d.pair.i << "x" << d.pair.j << ")x" << d.k;
  }
  return os;
}

/// Dense, insertion-ordered set of ancilla definitions. Indices never move
/// once assigned.
class AncillaRegistry {
 public:
  /// Index of `def`, registering it if new.
  std::uint32_t intern(const AncillaDef& def) {
    auto [it, inserted] = lookup_.try_emplace(def, static_cast<std::uint32_t>(entries_.size()));
    if (inserted) entries_.push_back(def);
    return it->second;
  }

  std::optional<std::uint32_t> find(const AncillaDef& def) const {
    auto it = lookup_.find(def);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  VarRef var(const AncillaDef& def) {
    return VarRef::ancilla(intern(def));
  }

  const std::vector<AncillaDef>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const AncillaDef& operator[](std::size_t a) const { return entries_.at(a); }

  friend bool operator==(const AncillaRegistry& a, const AncillaRegistry& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<AncillaDef> entries_;
  std::map<AncillaDef, std::uint32_t> lookup_;
};

}  // namespace pubo_forge
