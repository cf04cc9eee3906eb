#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pubo_forge/error.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/polynomial.hpp"
#include "pubo_forge/pubo_io.hpp"

namespace pubo_forge {

/// A Boolean r-variable of the encoding: "the ancilla for this pair (or
/// triple) is used". Exactly one of pair/triple is meaningful.
struct RVar {
  bool is_triple = false;
  Pair pair;
  Triple triple;

  static RVar of(const Pair& p) { return {false, p, {}}; }
  static RVar of(const Triple& t) { return {true, {}, t}; }

  friend bool operator==(const RVar&, const RVar&) = default;
};

struct WClause {
  std::vector<int> lits;  // DIMACS literals over 1-based variable numbers
  std::uint64_t weight = 1;

  friend bool operator==(const WClause&, const WClause&) = default;
};

/// Minimum-ancilla quartic-to-quadratic reduction as weighted MaxSAT:
///   soft   (not r) for every r, weight 1
///   hard   r_ijk -> (r_ij or r_ik or r_jk) for every triple variable
///   hard   every cubic term has one of its pairs
///   hard   every quartic term has two disjoint pairs or one of its
///          triples, in CNF (8 clauses per term)
/// Hard clauses weigh |R| + 1. Variables are the pairs inside some cubic or
/// quartic term (sorted), then the triples inside some quartic term (sorted).
struct WMaxSatInstance {
  std::vector<RVar> vars;
  std::vector<WClause> clauses;
  std::uint64_t hard_weight = 1;

  bool is_hard(const WClause& c) const { return c.weight >= hard_weight; }
  std::size_t soft_count() const {
    return static_cast<std::size_t>(std::count_if(clauses.begin(), clauses.end(), [&](const WClause& c) { return !is_hard(c); }));
  }
  std::size_t hard_count() const { return clauses.size() - soft_count(); }

  friend bool operator==(const WMaxSatInstance&, const WMaxSatInstance&) = default;
};

inline WMaxSatInstance build_wmaxsat(const Polynomial& poly) {
  if (poly.degree() > 4) throw InputError("the WMAXSAT encoding handles degree <= 4");
  std::vector<Triple> t3;
  std::vector<Quad> t4;
  for (const auto& [m, c] : poly.terms()) {
    if (m.degree() == 3) t3.push_back(triple_of(m));
    if (m.degree() == 4) t4.push_back(quad_of(m));
  }
  WMaxSatInstance inst;
  if (t3.empty() && t4.empty()) return inst;

  std::set<Pair> r2;
  std::set<Triple> r3;
  for (const Triple& t : t3) {
    for (const Pair& p : t.pairs()) r2.insert(p);
  }
  for (const Quad& q : t4) {
    for (const Pair& p : q.pairs()) r2.insert(p);
    for (const Triple& t : q.triples()) r3.insert(t);
  }
  std::map<Pair, int> pair_var;
  std::map<Triple, int> triple_var;
  for (const Pair& p : r2) {
    inst.vars.push_back(RVar::of(p));
    pair_var[p] = static_cast<int>(inst.vars.size());
  }
  for (const Triple& t : r3) {
    inst.vars.push_back(RVar::of(t));
    triple_var[t] = static_cast<int>(inst.vars.size());
  }
  const std::uint64_t hard = inst.vars.size() + 1;
  inst.hard_weight = hard;

  for (int v = 1; v <= static_cast<int>(inst.vars.size()); ++v) inst.clauses.push_back({{-v}, 1});
  for (const Triple& t : r3) {
    auto ps = t.pairs();
    inst.clauses.push_back({{-triple_var[t], pair_var[ps[0]], pair_var[ps[1]], pair_var[ps[2]]}, hard});
  }
  for (const Triple& t : t3) {
    auto ps = t.pairs();
    inst.clauses.push_back({{pair_var[ps[0]], pair_var[ps[1]], pair_var[ps[2]]}, hard});
  }
  for (const Quad& q : t4) {
    auto splits = q.pair_splits();
    auto ts = q.triples();
    for (int mask = 0; mask < 8; ++mask) {
      WClause c{{}, hard};
      for (int s = 0; s < 3; ++s) {
        const Pair& y = (mask >> (2 - s)) & 1 ? splits[s].second : splits[s].first;
        c.lits.push_back(pair_var[y]);
      }
      for (const Triple& t : ts) c.lits.push_back(triple_var[t]);
      inst.clauses.push_back(std::move(c));
    }
  }
  return inst;
}

struct WMaxSatSolution {
  std::vector<std::uint8_t> assignment;  // assignment[v - 1] for variable v
  bool proven_optimal = false;
  std::uint64_t satisfied_weight = 0;
  std::uint64_t nodes = 0;

  std::size_t true_count() const { return static_cast<std::size_t>(std::count(assignment.begin(), assignment.end(), 1)); }
};

inline bool clause_satisfied(const WClause& c, std::span<const std::uint8_t> x) {
  return std::any_of(c.lits.begin(), c.lits.end(), [&](int l) {
    std::uint8_t val = x[static_cast<std::size_t>(std::abs(l)) - 1];
    return l > 0 ? val == 1 : val == 0;
  });
}

inline std::uint64_t satisfied_weight(const WMaxSatInstance& inst, std::span<const std::uint8_t> x) {
  std::uint64_t w = 0;
  for (const WClause& c : inst.clauses) {
    if (clause_satisfied(c, x)) w += c.weight;
  }
  return w;
}

namespace detail {

/// Branch and bound specialised to soft clauses that are single negative
/// literals: minimise the weight of variables set true subject to the hard
/// clauses. Unit propagation on hard clauses; lower bound is a packing of
/// unsatisfied all-positive hard clauses over disjoint free variables.
class WMaxSatSearch {
 public:
  WMaxSatSearch(const WMaxSatInstance& inst, std::uint64_t budget) : inst_(inst), budget_(budget) {
    const std::size_t n = inst.vars.size();
    cost_.assign(n, 0);
    for (const WClause& c : inst.clauses) {
      if (inst.is_hard(c)) {
        for (int l : c.lits) {
          if (l == 0 || static_cast<std::size_t>(std::abs(l)) > n) throw InputError("clause literal out of range");
        }
        hard_.push_back(&c);
      } else {
        if (c.lits.size() != 1 || c.lits[0] >= 0) {
          throw InputError("exact WMAXSAT solver expects soft clauses of the form (not r)");
        }
        cost_[static_cast<std::size_t>(-c.lits[0]) - 1] += c.weight;
      }
    }
    value_.assign(n, kFree);
  }

  WMaxSatSolution run() {
    best_.assign(inst_.vars.size(), 1);
    best_cost_ = 0;
    for (auto w : cost_) best_cost_ += w;
    search(0);
    WMaxSatSolution s;
    s.assignment = best_;
    s.proven_optimal = !exhausted_;
    s.nodes = nodes_;
    s.satisfied_weight = satisfied_weight(inst_, best_);
    return s;
  }

 private:
  static constexpr std::int8_t kFree = -1;

  std::int8_t lit_value(int l) const {
    std::int8_t v = value_[static_cast<std::size_t>(std::abs(l)) - 1];
    if (v == kFree) return kFree;
    return l > 0 ? v : static_cast<std::int8_t>(1 - v);
  }

  void assign(std::size_t v, std::uint8_t val, std::vector<std::size_t>& trail, std::uint64_t& cost) {
    value_[v] = static_cast<std::int8_t>(val);
    trail.push_back(v);
    if (val) cost += cost_[v];
  }

  // Returns false on conflict.
  bool propagate(std::vector<std::size_t>& trail, std::uint64_t& cost) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const WClause* c : hard_) {
        int free_lit = 0;
        int free_count = 0;
        bool sat = false;
        for (int l : c->lits) {
          std::int8_t lv = lit_value(l);
          if (lv == 1) {
            sat = true;
            break;
          }
          if (lv == kFree) {
            ++free_count;
            free_lit = l;
          }
        }
        if (sat) continue;
        if (free_count == 0) return false;
        if (free_count == 1) {
          assign(static_cast<std::size_t>(std::abs(free_lit)) - 1, free_lit > 0 ? 1 : 0, trail, cost);
          changed = true;
        }
      }
    }
    return true;
  }

  void search(std::uint64_t cost) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    std::vector<std::size_t> trail;
    if (propagate(trail, cost) && cost < best_cost_) {
      std::vector<std::size_t> open;
      std::vector<std::uint8_t> used(value_.size(), 0);
      std::uint64_t bound = 0;
      for (std::size_t h = 0; h < hard_.size(); ++h) {
        bool sat = false, has_free_neg = false;
        for (int l : hard_[h]->lits) {
          std::int8_t lv = lit_value(l);
          sat = sat || lv == 1;
          has_free_neg = has_free_neg || (lv == kFree && l < 0);
        }
        if (sat) continue;
        open.push_back(h);
        if (has_free_neg) continue;
        bool disjoint = true;
        std::uint64_t cheapest = ~std::uint64_t{0};
        for (int l : hard_[h]->lits) {
          auto v = static_cast<std::size_t>(std::abs(l)) - 1;
          if (value_[v] != kFree) continue;
          disjoint = disjoint && !used[v];
          cheapest = std::min(cheapest, cost_[v]);
        }
        if (!disjoint) continue;
        for (int l : hard_[h]->lits) used[static_cast<std::size_t>(std::abs(l)) - 1] = 1;
        bound += cheapest;
      }
      if (open.empty()) {
        best_cost_ = cost;
        best_.assign(value_.size(), 0);
        for (std::size_t v = 0; v < value_.size(); ++v) best_[v] = value_[v] == 1;
      } else if (cost + bound < best_cost_) {
        std::vector<std::size_t> score(value_.size(), 0);
        for (std::size_t h : open) {
          for (int l : hard_[h]->lits) {
            auto v = static_cast<std::size_t>(std::abs(l)) - 1;
            if (value_[v] == kFree) ++score[v];
          }
        }
        std::size_t pick = value_.size();
        for (std::size_t v = 0; v < value_.size(); ++v) {
          if (value_[v] == kFree && (pick == value_.size() || score[v] > score[pick])) pick = v;
        }
        for (std::uint8_t val : {std::uint8_t{1}, std::uint8_t{0}}) {
          value_[pick] = static_cast<std::int8_t>(val);
          search(cost + (val ? cost_[pick] : 0));
          value_[pick] = kFree;
          if (exhausted_) break;
        }
      }
    }
    for (std::size_t v : trail) value_[v] = kFree;
  }

  const WMaxSatInstance& inst_;
  std::uint64_t budget_;
  std::vector<const WClause*> hard_;
  std::vector<std::uint64_t> cost_;
  std::vector<std::int8_t> value_;
  std::vector<std::uint8_t> best_;
  std::uint64_t best_cost_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

/// Exact optimum by branch and bound (variables in the most open hard
/// clauses first, true before false), starting from the all-true
/// assignment, which satisfies every hard clause. Deterministic.
inline WMaxSatSolution solve_wmaxsat_exact(const WMaxSatInstance& inst, std::uint64_t node_budget = 1'000'000) {
  detail::WMaxSatSearch search(inst, node_budget);
  return search.run();
}

/// DIMACS WCNF with a comment header naming every variable.
inline std::string emit_wcnf(const WMaxSatInstance& inst) {
  std::ostringstream out;
  out << "c minimum-ancilla quadratization (weighted MaxSAT)\n";
  for (std::size_t v = 0; v < inst.vars.size(); ++v) {
    const RVar& r = inst.vars[v];
    out << "c var " << v + 1 << " r";
    if (r.is_triple) out << ' ' << r.triple.v[0] << ' ' << r.triple.v[1] << ' ' << r.triple.v[2];
    else out << ' ' << r.pair.i << ' ' << r.pair.j;
    out << '\n';
  }
  out << "p wcnf " << inst.vars.size() << ' ' << inst.clauses.size() << ' ' << inst.hard_weight << '\n';
  for (const WClause& c : inst.clauses) {
    out << c.weight;
    for (int l : c.lits) out << ' ' << l;
    out << " 0\n";
  }
  return out.str();
}

/// Reads what emit_wcnf writes (variable names from the 'c var' lines).
inline WMaxSatInstance parse_wcnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  WMaxSatInstance inst;
  std::map<long long, RVar> names;
  long long nvars = -1, nclauses = -1;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::split_ws(raw);
    if (toks.empty()) continue;
    if (toks[0] == "c") {
      if (toks.size() >= 5 && toks[1] == "var" && toks[3] == "r") {
        long long v = detail::parse_index(toks[2], lineno);
        if (toks.size() == 6) names[v] = RVar::of(Pair(static_cast<int>(detail::parse_index(toks[4], lineno)),
                                                       static_cast<int>(detail::parse_index(toks[5], lineno))));
        else if (toks.size() == 7)
          names[v] = RVar::of(Triple(static_cast<int>(detail::parse_index(toks[4], lineno)),
                                     static_cast<int>(detail::parse_index(toks[5], lineno)),
                                     static_cast<int>(detail::parse_index(toks[6], lineno))));
        else throw ParseError(lineno, "malformed variable comment");
      }
      continue;
    }
    if (toks[0] == "p") {
      if (toks.size() != 5 || toks[1] != "wcnf") throw ParseError(lineno, "expected 'p wcnf <vars> <clauses> <top>'");
      nvars = detail::parse_index(toks[2], lineno);
      nclauses = detail::parse_index(toks[3], lineno);
      inst.hard_weight = static_cast<std::uint64_t>(detail::parse_index(toks[4], lineno));
      continue;
    }
    if (nvars < 0) throw ParseError(lineno, "clause before the 'p wcnf' line");
    if (toks.size() < 2 || toks.back() != "0") throw ParseError(lineno, "clause must end with 0");
    WClause c;
    c.weight = static_cast<std::uint64_t>(detail::parse_index(toks[0], lineno));
    for (std::size_t k = 1; k + 1 < toks.size(); ++k) {
      long long l = detail::parse_index(toks[k], lineno);
      if (l == 0 || std::llabs(l) > nvars) throw ParseError(lineno, "literal out of range");
      c.lits.push_back(static_cast<int>(l));
    }
    inst.clauses.push_back(std::move(c));
  }
  if (nvars < 0) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'p wcnf' line");
  if (static_cast<long long>(inst.clauses.size()) != nclauses) throw InputError("clause count does not match header");
  for (long long v = 1; v <= nvars; ++v) {
    auto it = names.find(v);
    if (it == names.end()) throw InputError("variable " + std::to_string(v) + " has no 'c var' name");
    inst.vars.push_back(it->second);
  }
  return inst;
}

/// Reads a solver model: whitespace-separated signed literals. Lines starting
/// with c, s or o are skipped, a leading v is dropped, 0 is ignored.
/// Variables not mentioned are false.
inline std::vector<std::uint8_t> parse_wmaxsat_model(std::string_view text, std::size_t nvars) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  std::vector<std::uint8_t> x(nvars, 0);
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::split_ws(raw);
    if (toks.empty()) continue;
    if (toks[0] == "c" || toks[0] == "s" || toks[0] == "o") continue;
    for (const std::string& tok : toks) {
      if (tok == "v") continue;
      long long l = detail::parse_index(tok, lineno);
      if (l == 0) continue;
      if (static_cast<std::size_t>(std::llabs(l)) > nvars) throw ParseError(lineno, "model literal out of range");
      x[static_cast<std::size_t>(std::llabs(l)) - 1] = l > 0;
    }
  }
  return x;
}

}  // namespace pubo_forge
