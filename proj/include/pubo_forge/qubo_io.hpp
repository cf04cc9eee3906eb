#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "pubo_forge/ancilla.hpp"
#include "pubo_forge/error.hpp"
#include "pubo_forge/plan.hpp"
#include "pubo_forge/polynomial.hpp"
#include "pubo_forge/pubo_io.hpp"

namespace pubo_forge {

// .qubo layout. Variables are numbered 1..total; the first
// <computational_vars> are the source variables, ancilla registry index a is
// variable computational_vars + 1 + a.
//
//   p qubo <total_vars> <computational_vars>
//   a <var> pair <i> <j> [<m>]
//   a <var> triple <i> <j> <k> via <p> <q>
//   c <offset>
//   <coeff> <u> <v>            (u <= v; u == v is the linear term on u)

namespace detail {

inline std::uint32_t qubo_number(VarRef v, int n) {
  return v.is_ancilla() ? static_cast<std::uint32_t>(n) + 1 + v.index : v.index;
}

inline VarRef qubo_var(long long number, int n) {
  if (number <= n) return VarRef::computational(static_cast<std::uint32_t>(number));
  return VarRef::ancilla(static_cast<std::uint32_t>(number - n - 1));
}

}  // namespace detail

inline std::string emit_qubo(const ReducedInstance& r) {
  const int n = r.source_n;
  if (r.quadratic.degree() > 2) throw InputError("the .qubo format holds degree <= 2 polynomials only");
  std::ostringstream out;
  out << "p qubo " << r.total_vars() << " " << n << "\n";
  for (std::size_t a = 0; a < r.registry.size(); ++a) {
    const AncillaDef& d = r.registry[a];
    out << "a " << n + 1 + a << ' ';
    switch (d.kind) {
      case AncillaDef::Kind::Pair:
        out << "pair " << d.pair.i << ' ' << d.pair.j;
        break;
      case AncillaDef::Kind::PairCopy:
        out << "pair " << d.pair.i << ' ' << d.pair.j << ' ' << d.m;
        break;
      case AncillaDef::Kind::TripleViaPair: {
        Triple t = d.triple();
        out << "triple " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << " via " << d.pair.i << ' ' << d.pair.j;
        break;
      }
    }
    out << '\n';
  }
  if (Coeff c = r.quadratic.coefficient(Monomial{}); c != 0) out << "c " << c << '\n';
  for (const auto& [m, c] : r.quadratic.terms()) {
    if (m.degree() == 0) continue;
    auto u = detail::qubo_number(m[0], n);
    auto v = m.degree() == 2 ? detail::qubo_number(m[1], n) : u;
    if (u > r.total_vars() || v > r.total_vars()) throw InputError("term references an unregistered ancilla");
    out << c << ' ' << u << ' ' << v << '\n';
  }
  return out.str();
}

inline ReducedInstance parse_qubo(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  long long total = 0;
  int n = 0;
  std::map<long long, AncillaDef> defs;
  std::vector<std::tuple<std::size_t, Coeff, long long, long long>> term_lines;
  Coeff offset = 0;
  bool have_offset = false;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::split_ws(detail::strip_comment(raw));
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "qubo") {
        throw ParseError(lineno, "expected header 'p qubo <total_vars> <computational_vars>'");
      }
      total = detail::parse_index(toks[2], lineno);
      long long comp = detail::parse_index(toks[3], lineno);
      if (comp < 0 || total < comp) throw ParseError(lineno, "inconsistent variable counts in header");
      n = static_cast<int>(comp);
      have_header = true;
      continue;
    }
    if (toks[0] == "a") {
      if (toks.size() < 5) throw ParseError(lineno, "truncated ancilla line");
      long long var = detail::parse_index(toks[1], lineno);
      if (var <= n || var > total) throw ParseError(lineno, "ancilla variable " + toks[1] + " out of range");
      if (defs.contains(var)) throw ParseError(lineno, "ancilla variable " + toks[1] + " defined twice");
      auto idx = [&](std::size_t k) {
        long long i = detail::parse_index(toks.at(k), lineno);
        if (i < 1 || i > n) throw ParseError(lineno, "ancilla refers to non-computational index " + toks[k]);
        return static_cast<int>(i);
      };
      try {
        if (toks[2] == "pair" && toks.size() == 5) {
          defs[var] = AncillaDef::of_pair(Pair(idx(3), idx(4)));
        } else if (toks[2] == "pair" && toks.size() == 6) {
          long long m = detail::parse_index(toks[5], lineno);
          defs[var] = AncillaDef::copy(Pair(idx(3), idx(4)), m >= 1 && m <= 3 ? static_cast<int>(m) : 0);
        } else if (toks[2] == "triple" && toks.size() == 9 && toks[6] == "via") {
          Triple t(idx(3), idx(4), idx(5));
          Pair base(idx(7), idx(8));
          if (!t.contains(base)) throw ParseError(lineno, "intermediate pair is not inside the triple");
          defs[var] = AncillaDef::triple_via(base, t.other(base));
        } else {
          throw ParseError(lineno, "unrecognized ancilla definition");
        }
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        throw ParseError(lineno, e.what());
      }
      continue;
    }
    if (toks[0] == "c") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'c <offset>'");
      offset += detail::parse_coeff(toks[1], lineno);
      have_offset = true;
      continue;
    }
    if (toks.size() != 3) throw ParseError(lineno, "expected '<coeff> <u> <v>'");
    Coeff c = detail::parse_coeff(toks[0], lineno);
    long long u = detail::parse_index(toks[1], lineno);
    long long v = detail::parse_index(toks[2], lineno);
    if (u < 1 || v < 1 || u > total || v > total) throw ParseError(lineno, "variable index out of range");
    term_lines.emplace_back(lineno, c, u, v);
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'p qubo' header");
  ReducedInstance r{Polynomial(n), {}, n};
  for (long long var = n + 1; var <= total; ++var) {
    auto it = defs.find(var);
    if (it == defs.end()) throw InputError("ancilla variable " + std::to_string(var) + " has no definition line");
    if (r.registry.intern(it->second) != static_cast<std::uint32_t>(var - n - 1)) {
      throw InputError("ancilla variable " + std::to_string(var) + " duplicates an earlier definition");
    }
  }
  if (have_offset) r.quadratic.add(Monomial{}, offset);
  for (const auto& [line, c, u, v] : term_lines) {
    r.quadratic.add(Monomial{detail::qubo_var(u, n), detail::qubo_var(v, n)}, c);
  }
  return r;
}

}  // namespace pubo_forge
