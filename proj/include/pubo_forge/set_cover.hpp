#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pubo_forge/error.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

/// Universe U = the cubic terms to collapse; each candidate is a pair drawn
/// from some member of U together with the members of U it can collapse.
struct SetCoverInstance {
  std::vector<Triple> universe;
  struct Candidate {
    Pair pair;
    std::vector<std::size_t> covers;  // indices into universe, ascending
  };
  std::vector<Candidate> candidates;
};

/// minimize c^T v subject to M v >= b, v in {0,1}^|S|.
struct IlpInstance {
  std::vector<int> c;
  std::vector<std::vector<std::uint8_t>> M;  // |U| rows x |S| columns
  std::vector<int> b;

  std::size_t rows() const { return M.size(); }
  std::size_t cols() const { return c.size(); }
};

inline SetCoverInstance build_set_cover(const Polynomial& poly) {
  if (poly.degree() > 3) throw InputError("set cover planning handles cubic polynomials only");
  SetCoverInstance sc;
  for (const auto& [m, c] : poly.terms()) {
    if (m.degree() == 3) sc.universe.push_back(triple_of(m));
  }
  std::map<Pair, std::vector<std::size_t>> by_pair;
  for (std::size_t u = 0; u < sc.universe.size(); ++u) {
    for (const Pair& p : sc.universe[u].pairs()) by_pair[p].push_back(u);
  }
  for (auto& [p, covers] : by_pair) sc.candidates.push_back({p, std::move(covers)});
  return sc;
}

/// Column j of M is candidate j. An empty universe gives an empty instance.
inline IlpInstance set_cover_to_ilp(const SetCoverInstance& sc) {
  IlpInstance ilp;
  ilp.c.assign(sc.candidates.size(), 1);
  ilp.b.assign(sc.universe.size(), 1);
  ilp.M.assign(sc.universe.size(), std::vector<std::uint8_t>(sc.candidates.size(), 0));
  for (std::size_t j = 0; j < sc.candidates.size(); ++j) {
    for (std::size_t u : sc.candidates[j].covers) ilp.M[u][j] = 1;
  }
  return ilp;
}

/// lp_solve-format text of the covering ILP, for external solvers.
inline std::string emit_lp(const SetCoverInstance& sc) {
  std::ostringstream out;
  out << "/* minimum-ancilla set cover: v<j> selects collapse pair j */\n";
  for (std::size_t j = 0; j < sc.candidates.size(); ++j) {
    out << "/* v" << j + 1 << " = pair " << sc.candidates[j].pair.i << " " << sc.candidates[j].pair.j << " */\n";
  }
  out << "min:";
  for (std::size_t j = 0; j < sc.candidates.size(); ++j) out << " +v" << j + 1;
  out << ";\n";
  std::vector<std::vector<std::size_t>> rows(sc.universe.size());
  for (std::size_t j = 0; j < sc.candidates.size(); ++j) {
    for (std::size_t u : sc.candidates[j].covers) rows[u].push_back(j);
  }
  for (std::size_t u = 0; u < rows.size(); ++u) {
    out << "cover_" << u + 1 << ":";
    for (std::size_t j : rows[u]) out << " +v" << j + 1;
    out << " >= 1;\n";
  }
  if (!sc.candidates.empty()) {
    out << "bin";
    for (std::size_t j = 0; j < sc.candidates.size(); ++j) out << (j == 0 ? " " : ", ") << "v" << j + 1;
    out << ";\n";
  }
  return out.str();
}

struct IlpSolution {
  std::vector<std::uint8_t> v;
  bool proven_optimal = false;
  std::uint64_t nodes = 0;

  int cost() const { return static_cast<int>(std::count(v.begin(), v.end(), 1)); }
};

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

/// True iff every row of the covering system is satisfied by v.
inline bool is_feasible_cover(const IlpInstance& ilp, std::span<const std::uint8_t> v) {
  if (v.size() != ilp.cols()) return false;
  for (const auto& row : ilp.M) {
    bool hit = false;
    for (std::size_t j = 0; j < row.size() && !hit; ++j) hit = row[j] && v[j];
    if (!hit) return false;
  }
  return true;
}

namespace detail {

/// Greedy most-rows-first cover (ReduceMin on the ILP columns), ties to the
/// lowest column.
inline std::vector<std::uint8_t> greedy_cover(const IlpInstance& ilp) {
  std::vector<std::uint8_t> v(ilp.cols(), 0);
  std::vector<std::uint8_t> covered(ilp.rows(), 0);
  std::size_t left = ilp.rows();
  while (left > 0) {
    std::size_t best = ilp.cols();
    std::size_t best_gain = 0;
    for (std::size_t j = 0; j < ilp.cols(); ++j) {
      if (v[j]) continue;
      std::size_t gain = 0;
      for (std::size_t r = 0; r < ilp.rows(); ++r) gain += !covered[r] && ilp.M[r][j];
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    if (best == ilp.cols()) throw InputError("covering system is infeasible");
    v[best] = 1;
    for (std::size_t r = 0; r < ilp.rows(); ++r) {
      if (ilp.M[r][best] && !covered[r]) {
        covered[r] = 1;
        --left;
      }
    }
  }
  return v;
}

/// Depth-first branch and bound for unit-cost set cover.
///
/// Each node picks the uncovered row with the fewest still-allowed columns
/// and branches over those columns, most newly covered rows first; columns
/// tried in earlier sibling branches are forbidden in later ones, so every
/// cover is reached at most once. Lower bound: the larger of
/// ceil(uncovered / best column gain) and a greedy packing of uncovered rows
/// with pairwise disjoint allowed columns.
class CoverSearch {
 public:
  CoverSearch(const IlpInstance& ilp, std::uint64_t budget) : ilp_(ilp), budget_(budget) {
    row_cols_.resize(ilp.rows());
    col_rows_.resize(ilp.cols());
    for (std::size_t r = 0; r < ilp.rows(); ++r) {
      for (std::size_t j = 0; j < ilp.cols(); ++j) {
        if (ilp.M[r][j]) {
          row_cols_[r].push_back(j);
          col_rows_[j].push_back(r);
        }
      }
    }
    cover_count_.assign(ilp.rows(), 0);
    chosen_.assign(ilp.cols(), 0);
    forbidden_.assign(ilp.cols(), 0);
  }

  IlpSolution run(std::vector<std::uint8_t> incumbent) {
    best_ = std::move(incumbent);
    best_cost_ = static_cast<int>(std::count(best_.begin(), best_.end(), 1));
    uncovered_ = ilp_.rows();
    search(0);
    return {best_, !exhausted_, nodes_};
  }

 private:
  std::size_t gain(std::size_t j) const {
    std::size_t g = 0;
    for (std::size_t r : col_rows_[j]) g += cover_count_[r] == 0;
    return g;
  }

  int lower_bound() const {
    if (uncovered_ == 0) return 0;
    std::size_t max_gain = 0;
    for (std::size_t j = 0; j < ilp_.cols(); ++j) {
      if (!chosen_[j] && !forbidden_[j]) max_gain = std::max(max_gain, gain(j));
    }
    if (max_gain == 0) return std::numeric_limits<int>::max() / 2;
    int bound = static_cast<int>((uncovered_ + max_gain - 1) / max_gain);
    std::vector<std::uint8_t> used(ilp_.cols(), 0);
    int packing = 0;
    for (std::size_t r = 0; r < ilp_.rows(); ++r) {
      if (cover_count_[r]) continue;
      bool disjoint = true;
      for (std::size_t j : row_cols_[r]) {
        if (!forbidden_[j] && used[j]) disjoint = false;
      }
      if (!disjoint) continue;
      for (std::size_t j : row_cols_[r]) used[j] = 1;
      ++packing;
    }
    return std::max(bound, packing);
  }

  void take(std::size_t j, int dir) {
    chosen_[j] = dir > 0;
    for (std::size_t r : col_rows_[j]) {
      if (dir > 0 && cover_count_[r]++ == 0) --uncovered_;
      if (dir < 0 && --cover_count_[r] == 0) ++uncovered_;
    }
  }

  void search(int cost) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (uncovered_ == 0) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_ = chosen_;
      }
      return;
    }
    if (cost + lower_bound() >= best_cost_) return;

    std::size_t row = ilp_.rows();
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < ilp_.rows(); ++r) {
      if (cover_count_[r]) continue;
      std::size_t allowed = 0;
      for (std::size_t j : row_cols_[r]) allowed += !forbidden_[j];
      if (allowed < fewest) {
        fewest = allowed;
        row = r;
      }
    }
    if (fewest == 0) return;

    std::vector<std::size_t> options;
    for (std::size_t j : row_cols_[row]) {
      if (!forbidden_[j]) options.push_back(j);
    }
    std::stable_sort(options.begin(), options.end(),
                     [&](std::size_t a, std::size_t b) { return gain(a) > gain(b); });
    std::vector<std::size_t> banned;
    for (std::size_t j : options) {
      take(j, +1);
      search(cost + 1);
      take(j, -1);
      if (exhausted_) break;
      forbidden_[j] = 1;
      banned.push_back(j);
    }
    for (std::size_t j : banned) forbidden_[j] = 0;
  }

  const IlpInstance& ilp_;
  std::uint64_t budget_;
  std::vector<std::vector<std::size_t>> row_cols_;
  std::vector<std::vector<std::size_t>> col_rows_;
  std::vector<int> cover_count_;
  std::vector<std::uint8_t> chosen_;
  std::vector<std::uint8_t> forbidden_;
  std::size_t uncovered_ = 0;
  std::vector<std::uint8_t> best_;
  int best_cost_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

/// Exact minimum-cardinality cover by branch and bound, seeded with the
/// greedy cover. If the node budget runs out the best cover found so far is
/// returned with proven_optimal = false. Deterministic.
inline IlpSolution solve_ilp_exact(const IlpInstance& ilp, std::uint64_t node_budget = kDefaultNodeBudget) {
  if (ilp.rows() == 0) return {std::vector<std::uint8_t>(ilp.cols(), 0), true, 0};
  for (std::size_t r = 0; r < ilp.rows(); ++r) {
    if (ilp.M[r].size() != ilp.cols()) throw InputError("ILP matrix row has the wrong width");
  }
  detail::CoverSearch search(ilp, node_budget);
  return search.run(detail::greedy_cover(ilp));
}

}  // namespace pubo_forge
