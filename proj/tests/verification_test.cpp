#include "kthprice/report_io.hpp"
#include "kthprice/verification.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace kthprice {
namespace {

TEST(Benchmark, Examples)
{
  EXPECT_NEAR(expected_payment_benchmark(make_uniform(1.0), 3, 1.0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(expected_payment_benchmark(make_uniform(1.0), 3, 0.0), 0.0);
  EXPECT_EQ(expected_payment_benchmark(make_linear(1.0, 1.0), 5, 0.0), 0.0);
  EXPECT_NEAR(expected_payment_benchmark(make_triangle(1.0), 2, 1.0), 2.0 / 3.0, 1e-15);
  EXPECT_THROW(expected_payment_benchmark(make_uniform(1.0), 3, 1.5), std::invalid_argument);
}

TEST(Benchmark, MatchesQuadratureOfDefinition)
{
  // int_0^x y g(y) dy with g = (n-1) F^(n-2) f, integrated numerically.
  for (const auto &d : {make_uniform(2.0), make_triangle(1.0), make_linear(-1.0, 1.0)}) {
    for (int n = 2; n <= 7; ++n) {
      for (double frac : {0.3, 1.0}) {
        const double x = frac * d.omega();
        const double direct =
            integrate([&](double y) { return y * highest_order_stat(d, n, y).density; }, 0.0, x).value;
        EXPECT_NEAR(expected_payment_benchmark(d, n, x), direct, 1e-13);
      }
    }
  }
}

TEST(PaymentQuadrature, Examples)
{
  const auto uni = make_uniform(1.0);
  const auto third = BidFunction::equilibrium({3, 3}, uni);
  for (double x : {0.25, 0.6, 1.0}) {
    EXPECT_NEAR(expected_payment_quadrature(third, uni, 3, 3, x), 2 * x * x * x / 3, 1e-14);
  }
  const auto truthful2 = BidFunction::second_price({2, 2}, uni);
  EXPECT_NEAR(expected_payment_quadrature(truthful2, uni, 2, 2, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(expected_payment_benchmark(uni, 2, 1.0), 0.5, 1e-15);

  const auto truthful = BidFunction::second_price({4, 3}, uni);
  const double x = 0.7;
  EXPECT_LT(expected_payment_quadrature(truthful, uni, 4, 3, x), expected_payment_benchmark(uni, 4, x) - 1e-3);
}

TEST(RevenueEquivalence, Examples)
{
  const auto tri = make_triangle(1.0);
  const auto uni = make_uniform(1.0);
  EXPECT_TRUE(revenue_equivalence_check(BidFunction::equilibrium({5, 4}, tri), tri, 5, 4, 20, 1e-8).pass);
  EXPECT_TRUE(revenue_equivalence_check(BidFunction::equilibrium({6, 5}, uni), uni, 6, 5, 20, 1e-8).pass);
  const auto bad = revenue_equivalence_check(BidFunction::second_price({4, 3}, uni), uni, 4, 3, 20, 1e-8);
  EXPECT_FALSE(bad.pass);
  EXPECT_GT(bad.max_error, 0.0);
  EXPECT_THROW(revenue_equivalence_check(BidFunction::second_price({4, 3}, uni), uni, 4, 3, 2, 1e-8),
               std::invalid_argument);
}

TEST(RevenueEquivalence, ReportInvariants)
{
  const auto d = make_linear(1.0, 1.0);
  const auto report = revenue_equivalence_check(BidFunction::equilibrium({6, 4}, d), d, 6, 4, 7, 1e-8);
  ASSERT_EQ(report.grid.size(), 7U);
  ASSERT_EQ(report.errors.size(), 7U);
  for (double x : report.grid) {
    EXPECT_GT(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
  EXPECT_EQ(report.pass, report.max_error <= report.tolerance);
  EXPECT_TRUE(report.pass);
}

TEST(RevenueEquivalence, LinearSeriesMatrix)
{
  const auto d = make_linear(1.0, 1.0);
  for (int n = 3; n <= 8; ++n) {
    for (int k = 3; k <= n; ++k) {
      EXPECT_TRUE(revenue_equivalence_check(BidFunction::equilibrium({n, k}, d), d, n, k, 20, 1e-8).pass)
          << n << "," << k;
      EXPECT_FALSE(revenue_equivalence_check(BidFunction::second_price({n, k}, d), d, n, k, 20, 1e-8).pass);
    }
  }
}

TEST(MonteCarlo, SecondPriceUniform)
{
  const auto uni = make_uniform(1.0);
  const auto r = monte_carlo_expected_payment(BidFunction::second_price({3, 2}, uni), uni, 3, 2, 1.0, 200000, 11);
  EXPECT_NEAR(r.estimate, 2.0 / 3.0, 3 * r.standard_error);
  EXPECT_EQ(r.samples, 200000U);
  EXPECT_EQ(r.seed, 11U);
}

TEST(MonteCarlo, TriangleThirdPrice)
{
  const auto tri = make_triangle(1.0);
  const auto bid = BidFunction::equilibrium({4, 3}, tri);
  const auto r = monte_carlo_expected_payment(bid, tri, 4, 3, 0.8, 200000, 5);
  EXPECT_NEAR(r.estimate, expected_payment_benchmark(tri, 4, 0.8), 3 * r.standard_error);
}

TEST(MonteCarlo, ConditionalEstimatorAgrees)
{
  const auto tri = make_triangle(1.0);
  const auto bid = BidFunction::equilibrium({6, 4}, tri);
  const auto r = monte_carlo_expected_payment(bid, tri, 6, 4, 0.3, 100000, 3, {}, PaymentEstimator::Conditional);
  const double bench = expected_payment_benchmark(tri, 6, 0.3);
  EXPECT_NEAR(r.estimate, bench, 4 * r.standard_error);
  EXPECT_LT(r.standard_error, 0.05 * bench);
}

TEST(MonteCarlo, SmallValueGivesSmallPayment)
{
  const auto uni = make_uniform(1.0);
  const auto r = monte_carlo_expected_payment(BidFunction::equilibrium({5, 3}, uni), uni, 5, 3, 1e-3, 10000, 1);
  EXPECT_EQ(r.estimate, 0.0);
}

TEST(MonteCarlo, CoverageOverSeeds)
{
  const auto d = make_linear(1.0, 1.0);
  const auto bid = BidFunction::equilibrium({4, 3}, d);
  int inside = 0;
  int trials = 0;
  for (double x : {0.5, 0.8, 1.0}) {
    const double bench = expected_payment_benchmark(d, 4, x);
    for (std::uint64_t seed = 1; seed <= 34; ++seed) {
      const auto r = monte_carlo_expected_payment(bid, d, 4, 3, x, 20000, seed);
      inside += std::abs(r.estimate - bench) <= 4 * r.standard_error ? 1 : 0;
      ++trials;
    }
  }
  EXPECT_GE(inside, static_cast<int>(std::ceil(0.99 * trials)));
}

TEST(MonteCarlo, IndependentOfWorkerCount)
{
  const auto tri = make_triangle(1.0);
  const auto bid = BidFunction::equilibrium({5, 4}, tri);
  MonteCarloOptions one{4096, 1};
  MonteCarloOptions four{4096, 4};
  const auto a = monte_carlo_expected_payment(bid, tri, 5, 4, 0.9, 50000, 99, one);
  const auto b = monte_carlo_expected_payment(bid, tri, 5, 4, 0.9, 50000, 99, four);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.standard_error, b.standard_error);
  const auto ra = expected_revenue(bid, tri, 5, 4, 30000, 7, one);
  const auto rb = expected_revenue(bid, tri, 5, 4, 30000, 7, four);
  EXPECT_EQ(ra.estimate, rb.estimate);
  EXPECT_EQ(ra.standard_error, rb.standard_error);
}

TEST(MonteCarlo, Rejections)
{
  const auto uni = make_uniform(1.0);
  const auto bid = BidFunction::second_price({3, 2}, uni);
  EXPECT_THROW(monte_carlo_expected_payment(bid, uni, 3, 2, 0.0, 10, 1), std::invalid_argument);
  EXPECT_THROW(monte_carlo_expected_payment(bid, uni, 3, 2, 0.5, 0, 1), std::invalid_argument);
  EXPECT_THROW(expected_revenue(bid, uni, 3, 2, 0, 1), std::invalid_argument);
}

TEST(Revenue, Examples)
{
  const auto uni = make_uniform(1.0);
  const auto r2 = expected_revenue(BidFunction::second_price({3, 2}, uni), uni, 3, 2, 200000, 1);
  EXPECT_NEAR(r2.estimate, 0.5, 3 * r2.standard_error);
  const auto r4 = expected_revenue(BidFunction::equilibrium({5, 4}, uni), uni, 5, 4, 200000, 2);
  EXPECT_NEAR(r4.estimate, 4.0 / 6.0, 3 * r4.standard_error);
}

TEST(Revenue, TriangleAcrossK)
{
  const auto tri = make_triangle(1.0);
  std::vector<MonteCarloResult> results;
  for (int k = 2; k <= 4; ++k) {
    results.push_back(expected_revenue(BidFunction::equilibrium({4, k}, tri), tri, 4, k, 200000, 17 + k));
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t j = i + 1; j < results.size(); ++j) {
      const double se = std::hypot(results[i].standard_error, results[j].standard_error);
      EXPECT_NEAR(results[i].estimate, results[j].estimate, 3 * se) << i << "," << j;
    }
  }
}

TEST(BestResponse, SecondPriceProfile)
{
  const auto uni = make_uniform(1.0);
  const auto grid = closed_grid(0.0, 1.0, 101);
  const auto p = best_response_profile(BidFunction::second_price({3, 2}, uni), uni, 3, 2, 0.5, grid);
  EXPECT_NEAR(p.argmax, 0.5, 0.01);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = grid[i];
    EXPECT_NEAR(p.payoff[i], 0.5 * z * z - 2 * z * z * z / 3, 1e-14);
  }
}

TEST(BestResponse, EquilibriumAndNegativeControl)
{
  const auto tri = make_triangle(1.0);
  const auto grid = closed_grid(0.0, 1.0, 101);
  const auto p = best_response_profile(BidFunction::equilibrium({5, 4}, tri), tri, 5, 4, 0.6, grid);
  EXPECT_NEAR(p.argmax, 0.6, 0.01 * (1 + 1e-9));

  const auto uni = make_uniform(1.0);
  const auto q = best_response_profile(BidFunction::second_price({4, 3}, uni), uni, 4, 3, 0.5, grid);
  EXPECT_GT(std::abs(q.argmax - 0.5), 0.01);

  const std::vector<double> fractions{0.2, 0.5, 0.8};
  EXPECT_TRUE(best_response_check(BidFunction::equilibrium({6, 5}, make_linear(1.0, 1.0)), make_linear(1.0, 1.0), 6,
                                  5, fractions, 101)
                  .pass);
  EXPECT_FALSE(best_response_check(BidFunction::second_price({4, 3}, uni), uni, 4, 3, fractions, 101).pass);
}

TEST(SymbolicReports, OracleAndLadder)
{
  const auto tri = make_triangle(1.0);
  EXPECT_TRUE(psi_oracle_check(tri, 6, 5, 10, 1e-12).pass);
  const auto ladder = phi_ladder_verification(make_uniform(1.0), 5, 4, 10);
  EXPECT_TRUE(ladder.pass);
  EXPECT_EQ(ladder.max_error, 0.0);
}

TEST(ReportJson, Schema)
{
  const auto uni = make_uniform(1.0);
  auto report = revenue_equivalence_check(BidFunction::equilibrium({5, 3}, uni), uni, 5, 3, 4, 1e-8);
  report.seed = 42;
  const auto j = to_json(report);
  std::vector<std::string> keys;
  for (const auto &item : j.items()) {
    keys.push_back(item.key());
  }
  EXPECT_EQ(keys, (std::vector<std::string>{"check", "params", "grid", "errors", "max_error", "tolerance", "pass",
                                            "seed", "settings"}));
  EXPECT_EQ(j["params"]["n"], 5);
  EXPECT_EQ(j["params"]["k"], 3);
  EXPECT_EQ(j["params"]["dist"]["b"], 1.0);
  EXPECT_EQ(j["grid"].size(), 4U);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["settings"]["quadrature_tolerance"], "1e-14");
}

TEST(ReportIo, CsvAndDecimals)
{
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(format_decimal(35.0 / 24.0), "1.45833333333");
  EXPECT_EQ(format_decimal(0.5), "0.5");
}

}  // namespace
}  // namespace kthprice
