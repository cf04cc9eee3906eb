#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "pubo_forge/bench.hpp"

using namespace pubo_forge;

namespace {

BenchConfig small(Experiment e) {
  BenchConfig c;
  c.experiment = e;
  c.n = 6;
  c.instances = 12;
  c.lambda_grid = {1, 5, 10, 20};
  c.threads = 4;
  c.verify_fraction = 0.25;
  return c;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      EXPECT_EQ(line, kCsvHeader);
      header = true;
      continue;
    }
    rows.push_back(detail::split_list(line));
  }
  return rows;
}

}  // namespace

TEST(RandomPubo, ExhaustiveSampleTakesEveryTriple) {
  BenchConfig c;
  c.n = 6;
  c.lambda = 20;
  const Polynomial p = random_pubo(c, 0);
  EXPECT_EQ(oracle::triples_of(p).size(), 20u);
  EXPECT_EQ(p.size(), 20u);
}

TEST(RandomPubo, PrecisionRegimeShape) {
  BenchConfig c = preset_precision_growth();
  c.lambda = 50;
  const Polynomial p = random_pubo(c, 3);
  std::size_t quad = 0, cubic = 0;
  for (const auto& [m, coeff] : p.terms()) {
    EXPECT_NE(coeff, 0);
    EXPECT_LE(abs(coeff), 8);
    quad += m.degree() == 2;
    cubic += m.degree() == 3;
  }
  EXPECT_EQ(quad, 55u);
  EXPECT_EQ(cubic, 50u);
}

TEST(RandomPubo, Reproducible) {
  BenchConfig c;
  c.n = 9;
  c.lambda = 30;
  EXPECT_EQ(random_pubo(c, 7), random_pubo(c, 7));
  EXPECT_FALSE(random_pubo(c, 7) == random_pubo(c, 8));
  BenchConfig d = c;
  d.seed = 2;
  EXPECT_FALSE(random_pubo(c, 7) == random_pubo(d, 7));
}

TEST(RandomPubo, CoefficientsNeverZero) {
  BenchConfig c;
  c.n = 8;
  c.lambda = 56;
  c.coeff_min = -1;
  c.coeff_max = 1;
  for (int i = 0; i < 20; ++i) {
    const Polynomial p = random_pubo(c, i);
    EXPECT_EQ(p.size(), 56u);
    for (const auto& [m, coeff] : p.terms()) EXPECT_EQ(abs(coeff), 1);
  }
}

TEST(Config, Validation) {
  BenchConfig c;
  c.n = 5;
  c.lambda = 11;
  EXPECT_THROW(c.validate(), InputError);
  c.lambda = 10;
  EXPECT_NO_THROW(c.validate());
  c.coeff_min = c.coeff_max = 0;
  EXPECT_THROW(c.validate(), InputError);
}

TEST(Config, KeyValueText) {
  BenchConfig c;
  load_config_text(c, "# sweep\nexperiment = precision\nn=7\nlambdas = 1, 5,10\nstrategies=greedy\n"
                      "gadgets=single,triple\nquadratic_layer=yes\nseed=42\n");
  EXPECT_EQ(c.experiment, Experiment::Precision);
  EXPECT_EQ(c.n, 7);
  EXPECT_EQ(c.lambda_grid, (std::vector<int>{1, 5, 10}));
  EXPECT_EQ(c.strategies, (std::vector<std::string>{"greedy"}));
  EXPECT_EQ(c.gadgets.size(), 2u);
  EXPECT_TRUE(c.include_quadratic_layer);
  EXPECT_EQ(c.seed, 42u);
  try {
    load_config_text(c, "n=7\nbogus=1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(load_config_text(c, "n\n"), ParseError);
}

TEST(Grid, DefaultSpread) {
  const auto g = default_lambda_grid(8);
  EXPECT_EQ(g.size(), 12u);
  EXPECT_EQ(g.front(), 1);
  EXPECT_EQ(g.back(), 56);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_EQ(full_lambda_grid(5).size(), 10u);
}

TEST(Ancilla, RowsAndSaturation) {
  BenchConfig c = small(Experiment::Ancilla);
  const std::string csv = run_ancilla_experiment(c);
  const auto rows = csv_rows(csv);
  ASSERT_EQ(rows.size(), 8u);
  std::map<std::pair<int, std::string>, double> mean;
  for (const auto& r : rows) mean[std::make_pair(std::stoi(r[1]), r[2])] = std::stod(r[4]);
  auto at = [&](int l, const char* s) { return mean.at(std::make_pair(l, std::string(s))); };
  EXPECT_DOUBLE_EQ(at(1, "ilp"), 1.0);
  EXPECT_DOUBLE_EQ(at(20, "ilp"), static_cast<double>(quarter_squares(6)));
  for (int l : c.lambda_grid) EXPECT_LE(at(l, "ilp"), at(l, "reduce-min"));
  EXPECT_NE(csv.find("sandwich_violations=0"), std::string::npos);
  EXPECT_NE(csv.find("verify_failed=0"), std::string::npos);
}

TEST(Ancilla, SummaryCounts) {
  BenchConfig c = small(Experiment::Ancilla);
  c.strategies = {"ilp", "reduce-min"};
  c.gadgets = {GadgetMode::SingleAncilla};
  const BenchSummary s = run_experiment_records(c);
  EXPECT_EQ(s.records.size(), 4u * 2u * 12u);
  EXPECT_EQ(s.sandwich_checked, 4 * 12);
  EXPECT_EQ(s.sandwich_violations, 0);
  EXPECT_EQ(s.verified, 4 * 2 * 3);
  EXPECT_EQ(s.verify_failed, 0);
}

TEST(Precision, ThresholdAndZeroLambda) {
  BenchConfig c = small(Experiment::Precision);
  c.include_quadratic_layer = true;
  c.lambda_grid = {0, 10};
  const std::string csv = run_precision_experiment(c);
  EXPECT_NE(csv.find("# threshold_pct=100"), std::string::npos);
  const auto rows = csv_rows(csv);
  ASSERT_EQ(rows.size(), 8u);
  for (const auto& r : rows) {
    if (r[1] == "0") EXPECT_EQ(r[5], "0.0000");
    EXPECT_EQ(r[6], "0.0000") << "heuristics claim no optimality";
  }
}

TEST(Precision, GrowsWithLambdaOnAverage) {
  BenchConfig c = small(Experiment::Precision);
  c.n = 8;
  c.include_quadratic_layer = true;
  c.instances = 30;
  c.lambda_grid = {2, 20, 56};
  c.strategies = {"greedy"};
  c.gadgets = {GadgetMode::SingleAncilla};
  const auto rows = csv_rows(run_precision_experiment(c));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LT(std::stod(rows[0][5]), std::stod(rows[1][5]));
  EXPECT_LT(std::stod(rows[1][5]), std::stod(rows[2][5]));
}

TEST(Determinism, ThreadCountDoesNotMatter) {
  BenchConfig c = small(Experiment::Precision);
  c.strategies = {"greedy", "arbitrary", "ilp", "reduce-min"};
  c.gadgets = {GadgetMode::SingleAncilla, GadgetMode::TripleAncilla};
  BenchConfig one = c;
  one.threads = 1;
  const std::string a = run_precision_experiment(c);
  EXPECT_EQ(a, run_precision_experiment(one));
  EXPECT_EQ(a, run_precision_experiment(c));
}

TEST(Determinism, UnknownStrategyIsAnError) {
  BenchConfig c = small(Experiment::Ancilla);
  c.strategies = {"magic"};
  c.gadgets = {GadgetMode::SingleAncilla};
  EXPECT_THROW(run_experiment_records(c), InputError);
}

TEST(ParallelFor, RethrowsWorkerFailures) {
  EXPECT_THROW(parallel_for(100, 4, [](int i) { if (i == 37) throw InputError("x"); }), InputError);
  std::vector<int> hit(50, 0);
  parallel_for(50, 8, [&](int i) { hit[static_cast<std::size_t>(i)] = 1; });
  EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 50);
}
