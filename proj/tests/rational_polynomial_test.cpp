#include "kthprice/polynomial.hpp"
#include "kthprice/rational.hpp"

#include <gtest/gtest.h>

#include <random>

namespace kthprice {
namespace {

TEST(BigRational, LowestTermsPositiveDenominator)
{
  const BigRational q = make_rational(6, -4);
  EXPECT_EQ(boost::multiprecision::numerator(q), -3);
  EXPECT_EQ(boost::multiprecision::denominator(q), 2);
  EXPECT_EQ(to_string(q), "-3/2");
  EXPECT_EQ(to_string(make_rational(8, 4)), "2");
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(BigRational, ExactFromDouble)
{
  EXPECT_EQ(rational_from_double(0.5), make_rational(1, 2));
  EXPECT_EQ(to_double(rational_from_double(0.1)), 0.1);
  EXPECT_THROW(rational_from_double(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST(Binomial, SmallValuesAndBigValues)
{
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, 7), 0);
  EXPECT_EQ(binomial(0, 0), 1);
  // Past 64-bit range.
  EXPECT_EQ(binomial(100, 50).str(), "100891344545564193334812497256");
  for (int n = 1; n <= 40; ++n) {
    for (int k = 1; k < n; ++k) {
      ASSERT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

Polynomial RandomPolynomial(std::mt19937_64 &gen, int max_degree)
{
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<BigRational> c(static_cast<std::size_t>(degree(gen)) + 1);
  for (auto &v : c) {
    v = make_rational(num(gen), den(gen));
  }
  return Polynomial(std::move(c));
}

TEST(Polynomial, ArithmeticAndCalculus)
{
  const Polynomial p{1, 2, 3};  // 1 + 2x + 3x^2
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(BigRational(2)), 17);
  EXPECT_DOUBLE_EQ(p(2.0), 17.0);
  EXPECT_EQ(p.derivative(), (Polynomial{2, 6}));
  EXPECT_EQ(p.antiderivative(), (Polynomial{0, 1, 1, 1}));
  EXPECT_EQ(p - p, Polynomial{});
  EXPECT_EQ((Polynomial{1, 1}).pow(3), (Polynomial{1, 3, 3, 1}));
  EXPECT_EQ(Polynomial{}.degree(), -1);
}

TEST(PolynomialProperty, CalculusAndDivisionInvariants)
{
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = RandomPolynomial(gen, 8);
    const Polynomial q = RandomPolynomial(gen, 5);
    EXPECT_EQ(p.antiderivative().derivative(), p);
    EXPECT_EQ((p * q).derivative(), p.derivative() * q + p * q.derivative());
    if (!q.is_zero()) {
      const auto [quot, rem] = divmod(p, q);
      EXPECT_EQ(quot * q + rem, p);
      EXPECT_LT(rem.degree(), q.degree() == 0 ? 0 : q.degree());
    }
  }
}

TEST(Polynomial, GcdIsMonicCommonFactor)
{
  const Polynomial a = Polynomial{-1, 1} * Polynomial{2, 1};  // (x-1)(x+2)
  const Polynomial b = Polynomial{-1, 1} * Polynomial{3, 0, 1};  // (x-1)(x^2+3)
  EXPECT_EQ(gcd(BigRational(4) * a, b), (Polynomial{-1, 1}));
  EXPECT_THROW(divmod(a, Polynomial{}), std::domain_error);
}

TEST(RationalFunction, NormalizesAndCompares)
{
  const Polynomial x{0, 1};
  const RationalFunction r(BigRational(2) * x * x, BigRational(4) * x);  // = x/2
  EXPECT_EQ(r.denominator(), Polynomial::constant(1));
  EXPECT_EQ(r.numerator(), (Polynomial{0, make_rational(1, 2)}));
  EXPECT_TRUE(cross_equal(r, RationalFunction(x, Polynomial::constant(2))));
  EXPECT_THROW(RationalFunction(x, Polynomial{}), std::domain_error);
  EXPECT_THROW(r / RationalFunction(), std::domain_error);
}

TEST(RationalFunctionProperty, QuotientRuleMatchesExactDifference)
{
  // (N/D)' at a rational point equals the exact limit of difference quotients;
  // check via the identity (N/D)' * D^2 = N'D - ND' evaluated pointwise.
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial n = RandomPolynomial(gen, 5);
    Polynomial d = RandomPolynomial(gen, 3) + Polynomial::monomial(1, 4);
    const RationalFunction r(n, d);
    const RationalFunction dr = r.derivative();
    const BigRational x = make_rational(trial - 25, 7);
    if (d(x) == 0) {
      continue;
    }
    EXPECT_EQ(dr(x) * d(x) * d(x), n.derivative()(x) * d(x) - n(x) * d.derivative()(x));
    // Field operations agree pointwise.
    const RationalFunction s(RandomPolynomial(gen, 3));
    EXPECT_EQ((r + s)(x), r(x) + s(x));
    EXPECT_EQ((r * s)(x), r(x) * s(x));
  }
}

}  // namespace
}  // namespace kthprice
