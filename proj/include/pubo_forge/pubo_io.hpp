#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pubo_forge/error.hpp"
#include "pubo_forge/polynomial.hpp"

namespace pubo_forge {

namespace detail {

inline std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool is_integer_token(std::string_view tok) {
  if (tok.empty()) return false;
  std::size_t k = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (k == tok.size()) return false;
  for (; k < tok.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(tok[k]))) return false;
  }
  return true;
}

inline Coeff parse_coeff(std::string_view tok, std::size_t line) {
  if (!is_integer_token(tok)) throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  std::string s(tok);
  if (s[0] == '+') s.erase(0, 1);
  return Coeff(s);
}

inline long long parse_index(std::string_view tok, std::size_t line) {
  if (!is_integer_token(tok) || tok.size() > 12) {
    throw ParseError(line, "expected a variable index, got '" + std::string(tok) + "'");
  }
  return std::stoll(std::string(tok));
}

}  // namespace detail

/// Parses the .pubo text format:
///
///   p pubo <n>
///   <coeff> [<i> [<j> [<k> [<l>]]]]
///
/// Indices are 1-based; `#` starts a comment. Repeated indices within a line
/// collapse, repeated monomials are summed and zero sums dropped.
inline Polynomial parse_polynomial(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  Polynomial poly;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::split_ws(detail::strip_comment(raw));
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 3 || toks[0] != "p" || toks[1] != "pubo") {
        throw ParseError(lineno, "expected header 'p pubo <n>'");
      }
      long long n = detail::parse_index(toks[2], lineno);
      if (n < 0) throw ParseError(lineno, "negative variable count");
      poly = Polynomial(static_cast<int>(n));
      have_header = true;
      continue;
    }
    if (toks[0] == "p") throw ParseError(lineno, "duplicate header");
    Coeff c = detail::parse_coeff(toks[0], lineno);
    std::vector<VarRef> vars;
    for (std::size_t k = 1; k < toks.size(); ++k) {
      long long i = detail::parse_index(toks[k], lineno);
      if (i < 1 || i > poly.num_vars()) {
        throw ParseError(lineno, "variable index " + toks[k] + " outside [1, " + std::to_string(poly.num_vars()) + "]");
      }
      vars.push_back(VarRef::computational(static_cast<std::uint32_t>(i)));
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.size() > Monomial::kMaxDegree) {
      std::string term;
      for (std::size_t k = 1; k < toks.size(); ++k) term += (k > 1 ? " " : "") + toks[k];
      throw ParseError(lineno, "term over {" + term + "} has degree " + std::to_string(vars.size()) +
                                   "; at most 4 is supported");
    }
    poly.add(Monomial(std::span<const VarRef>(vars)), c);
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'p pubo <n>' header");
  return poly;
}

/// Inverse of parse_polynomial: header, then one line per term in
/// lexicographic monomial order, single-space separated.
inline std::string emit_polynomial(const Polynomial& poly) {
  std::ostringstream out;
  out << "p pubo " << poly.num_vars() << "\n";
  for (const auto& [m, c] : poly.terms()) {
    if (m.has_ancilla()) throw InputError("the .pubo format cannot hold ancilla variables");
    out << c;
    for (VarRef v : m.vars()) out << ' ' << v.index;
    out << '\n';
  }
  return out.str();
}

}  // namespace pubo_forge
