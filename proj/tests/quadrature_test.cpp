#include "kthprice/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace kthprice {
namespace {

TEST(GaussLegendre, WeightsSumToTwoAndNodesSymmetric)
{
  for (std::size_t n : {1U, 2U, 3U, 8U, 64U, 1024U}) {
    const GaussLegendreRule rule = gauss_legendre(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += rule.weights[i];
      EXPECT_NEAR(rule.nodes[i], -rule.nodes[n - 1 - i], 1e-15);
    }
    EXPECT_NEAR(sum, 2.0, 1e-13) << n;
  }
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1)
{
  const GaussLegendreRule rule = gauss_legendre(5);
  for (int degree = 0; degree <= 9; ++degree) {
    const double got = apply_rule(rule, [degree](double x) { return std::pow(x, degree); }, 0.0, 1.0);
    EXPECT_NEAR(got, 1.0 / (degree + 1), 1e-15) << degree;
  }
}

TEST(Integrate, SmoothFunctionConverges)
{
  const QuadratureResult r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
}

TEST(Integrate, EmptyIntervalIsZero)
{
  EXPECT_EQ(integrate([](double) { return 1.0; }, 0.5, 0.5).value, 0.0);
}

TEST(Integrate, SingularIntegrandReportsNonConvergence)
{
  QuadratureConfig config;
  config.tolerance = 1e-14;
  config.max_nodes = 64;
  const auto singular = [](double x) { return 1.0 / std::sqrt(x); };
  const QuadratureResult partial = integrate_report(singular, 0.0, 1.0, config);
  EXPECT_FALSE(partial.converged);
  EXPECT_GT(partial.error_estimate, 1e-14);
  try {
    integrate(singular, 0.0, 1.0, config);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError &e) {
    EXPECT_EQ(e.partial().nodes, 64U);
  }
}

}  // namespace
}  // namespace kthprice
