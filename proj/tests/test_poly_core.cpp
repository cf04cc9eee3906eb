#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pubo_forge/brute_force.hpp"
#include "pubo_forge/ising.hpp"
#include "pubo_forge/precision.hpp"
#include "pubo_forge/pubo_io.hpp"

using namespace pubo_forge;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int n, int terms, int max_degree = 4) {
  std::uniform_int_distribution<int> var(1, n), deg(0, max_degree), coeff(-9, 9);
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> idx;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) idx.push_back(var(rng));
    std::vector<VarRef> vs;
    for (int i : idx) vs.push_back(VarRef::computational(static_cast<std::uint32_t>(i)));
    p.add(Monomial(std::span<const VarRef>(vs)), coeff(rng));
  }
  return p;
}

std::vector<std::uint8_t> bits_of(std::uint64_t x, int n) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = x >> i & 1u;
  return v;
}

}  // namespace

TEST(Parse, SingleCubicTerm) {
  Polynomial p = parse_polynomial("p pubo 3\n3 1 2 3\n");
  EXPECT_EQ(p.num_vars(), 3);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coefficient(Monomial::of({1, 2, 3})), 3);
}

TEST(Parse, RepeatedIndexCollapses) {
  Polynomial p = parse_polynomial("p pubo 2\n2 1 1\n");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coefficient(Monomial::of({1})), 2);
}

TEST(Parse, CancellingLinesLeaveNothing) {
  EXPECT_TRUE(parse_polynomial("p pubo 3\n1 1 2 3\n-1 3 2 1\n").empty());
}

TEST(Parse, CommentsBlankLinesAndConstants) {
  Polynomial p = parse_polynomial("# leading comment\n\np pubo 2   # header\n5\n-2 2 # tail\n\n");
  EXPECT_EQ(p.coefficient(Monomial{}), 5);
  EXPECT_EQ(p.coefficient(Monomial::of({2})), -2);
}

TEST(Parse, ErrorsCarryLineNumbers) {
  try {
    parse_polynomial("p pubo 3\n1 1 2\n1 x 2\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_polynomial("1 1 2\n"), ParseError);                 // missing header
  EXPECT_THROW(parse_polynomial("p pubo 2\np pubo 2\n"), ParseError);   // duplicate header
  EXPECT_THROW(parse_polynomial("p pubo 2\n1 3\n"), ParseError);        // out of range
  EXPECT_THROW(parse_polynomial("p pubo 2\n1 0\n"), ParseError);        // zero index
  EXPECT_THROW(parse_polynomial("p qubo 2\n"), ParseError);
}

TEST(Parse, DegreeFiveNamesTheTerm) {
  try {
    parse_polynomial("p pubo 5\n1 1 2 3 4 5\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("degree 5"), std::string::npos) << what;
    EXPECT_NE(what.find("line 2"), std::string::npos) << what;
  }
  // Repeated indices are collapsed before the degree check.
  EXPECT_NO_THROW(parse_polynomial("p pubo 4\n1 1 2 3 4 4\n"));
}

TEST(Parse, HugeCoefficientsAreExact) {
  Polynomial p = parse_polynomial("p pubo 1\n123456789012345678901234567890 1\n");
  EXPECT_EQ(p.coefficient(Monomial::of({1})), Coeff("123456789012345678901234567890"));
}

TEST(Emit, RoundTripOnRandomPolynomials) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Polynomial p = random_poly(rng, 1 + trial % 8, trial % 15);
    const std::string text = emit_polynomial(p);
    EXPECT_EQ(parse_polynomial(text), p);
    EXPECT_EQ(emit_polynomial(parse_polynomial(text)), text);
  }
}

TEST(Emit, CanonicalLayout) {
  Polynomial p = parse_polynomial("p pubo 3\n-1 3 2\n4\n2 1 2 3\n");
  EXPECT_EQ(emit_polynomial(p), "p pubo 3\n4\n2 1 2 3\n-1 2 3\n");
}

TEST(Evaluate, Basics) {
  Polynomial p = parse_polynomial("p pubo 3\n3 1 2 3\n");
  EXPECT_EQ(evaluate(p, {1, 1, 1}), 3);
  EXPECT_EQ(evaluate(p, {1, 1, 0}), 0);
  Polynomial s = parse_polynomial("p pubo 3\n3 3\n1 1 2\n-2 1 3\n-2 2 3\n");
  EXPECT_EQ(evaluate(s, {0, 0, 1}), 3);
}

TEST(Evaluate, ShortAssignmentThrows) {
  Polynomial p = parse_polynomial("p pubo 3\n3 1 2 3\n");
  EXPECT_THROW(evaluate(p, {1, 1}), InputError);
}

TEST(Evaluate, IsLinear) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6;
    Polynomial p = random_poly(rng, n, 8), q = random_poly(rng, n, 8);
    const auto x = bits_of(rng() & 63u, n);
    EXPECT_EQ(evaluate(p + q, x), evaluate(p, x) + evaluate(q, x));
  }
}

TEST(Monomial, Multilinear) {
  Monomial m{VarRef::computational(2), VarRef::computational(1), VarRef::computational(2)};
  EXPECT_EQ(m.degree(), 2u);
  EXPECT_EQ(m, Monomial::of({1, 2}));
  EXPECT_THROW(Monomial::of({1, 2, 3, 4, 5}), InputError);
  EXPECT_LT(Monomial::of({1, 2}), Monomial::of({1, 3}));
}

TEST(BruteForce, SmallCases) {
  auto r = brute_force_minima(parse_polynomial("p pubo 2\n1 1 2\n"));
  EXPECT_EQ(r.min_value, 0);
  EXPECT_EQ(r.minimizers, (std::vector<std::uint64_t>{0b00, 0b01, 0b10}));

  r = brute_force_minima(parse_polynomial("p pubo 3\n-1 1 2 3\n"));
  EXPECT_EQ(r.min_value, -1);
  EXPECT_EQ(r.minimizers, (std::vector<std::uint64_t>{0b111}));
}

TEST(BruteForce, PenaltyGroundStatesAreTheConsistentRows) {
  // x1 = x, x2 = y, x3 = z: zero exactly where z = xy.
  auto r = brute_force_minima(parse_polynomial("p pubo 3\n3 3\n1 1 2\n-2 1 3\n-2 2 3\n"));
  EXPECT_EQ(r.min_value, 0);
  EXPECT_EQ(r.minimizers, (std::vector<std::uint64_t>{0b000, 0b001, 0b010, 0b111}));
}

TEST(BruteForce, CapIsEnforced) {
  Polynomial p(25);
  p.add(Monomial::of({25}), 1);
  EXPECT_THROW(brute_force_minima(p), CapExceeded);
  EXPECT_NO_THROW(brute_force_minima(Polynomial(3), 3));
}

TEST(BruteForce, BigCoefficientsTakeTheExactPath) {
  Polynomial p(2);
  p.add(Monomial::of({1}), Coeff("100000000000000000000000"));
  p.add(Monomial::of({2}), -1);
  auto r = brute_force_minima(p);
  EXPECT_EQ(r.min_value, -1);
  EXPECT_EQ(r.minimizers, (std::vector<std::uint64_t>{0b10}));
}

TEST(BruteForce, MatchesTruthTable) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial p = random_poly(rng, 6, 10);
    auto table = oracle::truth_table(p);
    auto r = brute_force_minima(p);
    const Coeff best = *std::min_element(table.begin(), table.end());
    EXPECT_EQ(r.min_value, best);
    std::vector<std::uint64_t> expected;
    for (std::uint64_t x = 0; x < table.size(); ++x)
      if (table[x] == best) expected.push_back(x);
    EXPECT_EQ(r.minimizers, expected);
  }
}

TEST(Precision, Definitions) {
  auto r = control_precision(parse_polynomial("p pubo 3\n2 1\n4 2\n6 3\n"));
  EXPECT_EQ(r.gcd_all, 2);
  EXPECT_EQ(r.control_precision, 3);
  r = control_precision(parse_polynomial("p pubo 2\n3 1\n-5 2\n"));
  EXPECT_EQ(r.gcd_all, 1);
  EXPECT_EQ(r.control_precision, 5);
  EXPECT_EQ(r.max_abs_coeff, 5);
  EXPECT_EQ(kResolvableMagnitudesAt4Bits, 16);
  EXPECT_THROW(control_precision(Polynomial(3)), InputError);
}

TEST(Precision, OffsetToggle) {
  Polynomial p = parse_polynomial("p pubo 2\n9\n2 1\n4 1 2\n");
  EXPECT_EQ(control_precision(p).control_precision, 9);
  EXPECT_EQ(control_precision(p, {.include_offset = false}).control_precision, 2);
}

TEST(Precision, PairBreakdownListsQuadraticTerms) {
  auto r = control_precision(parse_polynomial("p pubo 3\n1 1\n4 1 2\n-2 2 3\n5 1 2 3\n"));
  ASSERT_EQ(r.per_pair_breakdown.size(), 2u);
  EXPECT_EQ(r.per_pair_breakdown[0].first, Monomial::of({1, 2}));
  EXPECT_EQ(r.per_pair_breakdown[1].second, -2);
}

TEST(Precision, ScaleInvariant) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial p = random_poly(rng, 5, 6);
    if (p.empty()) continue;
    for (int k : {-7, -1, 2, 12}) EXPECT_EQ(control_precision(p.scaled(k)).control_precision, control_precision(p).control_precision);
  }
}

TEST(Ising, Substitutions) {
  IsingForm f = to_ising(parse_polynomial("p pubo 1\n1 1\n"));
  EXPECT_EQ(f.offset, Rational(1, 2));
  EXPECT_EQ(f.h.at(VarRef::computational(1)), Rational(-1, 2));

  f = to_ising(parse_polynomial("p pubo 2\n1 1 2\n"));
  EXPECT_EQ(f.offset, Rational(1, 4));
  EXPECT_EQ(f.h.at(VarRef::computational(1)), Rational(-1, 4));
  EXPECT_EQ(f.h.at(VarRef::computational(2)), Rational(-1, 4));
  EXPECT_EQ(f.J.at({VarRef::computational(1), VarRef::computational(2)}), Rational(1, 4));

  f = to_ising(parse_polynomial("p pubo 1\n5\n"));
  EXPECT_EQ(f.offset, 5);
  EXPECT_TRUE(f.h.empty());

  EXPECT_THROW(to_ising(parse_polynomial("p pubo 3\n1 1 2 3\n")), InputError);
}

TEST(Ising, AgreesOnEveryAssignment) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 10;
    Polynomial p = random_poly(rng, n, 12, 2);
    IsingForm f = to_ising(p);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      const auto a = bits_of(x, n);
      ASSERT_EQ(evaluate_ising(f, n, a), Rational(evaluate(p, a)));
    }
  }
}
