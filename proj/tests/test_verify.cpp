#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pubo_forge/ancilla_min.hpp"
#include "pubo_forge/pubo_io.hpp"
#include "pubo_forge/qubo_io.hpp"
#include "pubo_forge/verify.hpp"

using namespace pubo_forge;

TEST(Verify, IdentityOnQuadratics) {
  const Polynomial p = parse_polynomial("p pubo 3\n2 1 2\n-3 3\n1\n");
  const ReducedInstance r = identity_reduction(p);
  EXPECT_EQ(r.quadratic, p);
  const VerificationReport v = verify_reduction(p, r);
  EXPECT_TRUE(v.ok());
  EXPECT_FALSE(v.counterexample.has_value());
  EXPECT_EQ(v.ancilla_count, 0u);
  EXPECT_EQ(v.enumeration_width, 3u);
}

TEST(Verify, CorruptedCoefficientGivesACounterexample) {
  const Polynomial p = parse_polynomial("p pubo 4\n3 1 2 3\n-2 2 3 4\n1 1 4\n");
  ReducedInstance r = apply_plan(p, reduce_min_greedy(p));
  r.quadratic.add(Monomial::of({4}), 1);
  const VerificationReport v = verify_reduction(p, r);
  EXPECT_FALSE(v.pointwise_ok);
  EXPECT_FALSE(v.ok());
  EXPECT_EQ(v.failed_check, "pointwise");
  ASSERT_TRUE(v.counterexample.has_value());
  EXPECT_EQ((*v.counterexample)[3], 1);
  EXPECT_EQ(v.reduced_value, v.expected_value + 1);
}

TEST(Verify, GroundStatesComparedSeparately) {
  const Polynomial p = parse_polynomial("p pubo 2\n1 1\n");
  ReducedInstance above = identity_reduction(p);
  above.quadratic.add(Monomial::of({1, 2}), 1);
  const VerificationReport a = verify_reduction(p, above);
  EXPECT_FALSE(a.pointwise_ok);
  EXPECT_TRUE(a.ground_state_ok);

  ReducedInstance below = identity_reduction(p);
  below.quadratic.add(Monomial::of({1, 2}), -2);
  const VerificationReport b = verify_reduction(p, below);
  EXPECT_FALSE(b.pointwise_ok);
  EXPECT_FALSE(b.ground_state_ok);
}

TEST(Verify, AgreesWithPlainEnumeration) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const Polynomial p = fixture::random_cubic(rng, 4 + trial % 3, 1 + trial % 6, 2);
    ReducedInstance r = apply_plan(p, reduce_min_greedy(p));
    // Perturb about half of them.
    if (trial % 2) {
      auto it = r.quadratic.terms().begin();
      std::advance(it, static_cast<long>(rng() % r.quadratic.size()));
      r.quadratic.add(it->first, trial % 4 == 1 ? 1 : -1);
    }
    const VerificationReport v = verify_reduction(p, r);
    const bool equal = oracle::min_over_ancillas(r.quadratic, r.registry.size()) == oracle::truth_table(p);
    EXPECT_EQ(v.pointwise_ok, equal);
    if (v.pointwise_ok) EXPECT_TRUE(v.ground_state_ok);
    EXPECT_EQ(v.counterexample.has_value(), !v.ok());
  }
}

TEST(Verify, IndependentBlocksKeepTheWidthSmall) {
  // Six disjoint triples, three ancillas each in the split gadget. No two
  // ancillas share a term, so each is enumerated on its own.
  Polynomial p(20);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 6; ++t) p.add(Monomial::of({3 * t + 1, 3 * t + 2, 3 * t + 3}), fixture::nonzero(rng));
  const ReducedInstance r = apply_plan(p, reduce_min_greedy(p, GadgetMode::TripleAncilla));
  EXPECT_EQ(r.registry.size(), 18u);
  const VerificationReport v = verify_reduction(p, r);
  EXPECT_TRUE(v.ok());
  EXPECT_EQ(v.enumeration_width, 21u);
}

TEST(Verify, CapExceeded) {
  Polynomial p(30);
  p.add(Monomial::of({1, 30}), 1);
  EXPECT_THROW(verify_reduction(p, identity_reduction(p)), CapExceeded);
  Polynomial q(20);
  q.add(Monomial::of({1, 20}), 1);
  EXPECT_THROW(verify_reduction(q, identity_reduction(q), 19), CapExceeded);
  EXPECT_NO_THROW(verify_reduction(q, identity_reduction(q), 20));
}

TEST(Verify, RejectsMismatchedInputs) {
  const Polynomial p = parse_polynomial("p pubo 3\n1 1 2 3\n");
  ReducedInstance r = apply_plan(p, reduce_min_greedy(p));
  r.source_n = 4;
  EXPECT_THROW(verify_reduction(p, r), InputError);
}

TEST(Verify, SurvivesTheQuboFormat) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = fixture::random_cubic(rng, 6, 2 + trial % 8, 3);
    const ReducedInstance r = apply_plan(p, reduce_min_greedy(p, GadgetMode::TripleAncilla));
    EXPECT_TRUE(verify_reduction(p, parse_qubo(emit_qubo(r))).ok());
  }
}

TEST(Saturation, SmallN) {
  for (int n = 5; n <= 7; ++n) {
    const SaturationReport s = verify_saturation(n);
    EXPECT_TRUE(s.saturated()) << n << " " << to_string(s.outcome);
    EXPECT_EQ(s.optimum, quarter_squares(n));
    EXPECT_TRUE(covers_all_triples(mantel_construction(n), n));
  }
  EXPECT_EQ(verify_saturation(6).optimum, 6);
  EXPECT_EQ(verify_saturation(7).optimum, 9);
  EXPECT_THROW(verify_saturation(2), InputError);
}

TEST(Saturation, BudgetExhaustionIsReportedDistinctly) {
  const SaturationReport s = verify_saturation(8, 1);
  EXPECT_EQ(s.outcome, SaturationOutcome::BudgetExhausted);
  EXPECT_STREQ(to_string(s.outcome), "budget-exhausted");
}

TEST(Saturation, CoverCheck) {
  EXPECT_FALSE(covers_all_triples({Pair(1, 2)}, 4));
  EXPECT_TRUE(covers_all_triples({Pair(1, 2), Pair(3, 4)}, 4));
  EXPECT_EQ(complete_cubic(5).size(), 10u);
}
