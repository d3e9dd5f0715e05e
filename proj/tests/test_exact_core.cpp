#include <sobolev/polynomial.hpp>
#include <sobolev/radial_expr.hpp>
#include <sobolev/tensor.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace sobolev;
using sobolev::testing::poly;
using sobolev::testing::q;

namespace {

RadialExpr x_pow(std::size_t dim, std::size_t axis, int j) {
  return RadialExpr::term(Polynomial::variable(dim, axis), j);
}

}  // namespace

TEST(Rational, LowestTermsAndFormatting) {
  Rational a = q(6, -4);
  EXPECT_EQ(a.get_num(), -3);
  EXPECT_EQ(a.get_den(), 2);
  EXPECT_EQ(to_string(a), "-3/2");
  EXPECT_EQ(to_string(q(28)), "28");
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
  EXPECT_EQ(pow(q(2, 3), -2), q(9, 4));
}

TEST(Polynomial, DivisionByRadiusSquared) {
  // (x1^2 + x2^2) * x1 is divisible, x1^3 is not
  auto p = Polynomial::radius_squared(2).times_variable(0);
  auto quot = p.divide_by_radius_squared();
  ASSERT_TRUE(quot);
  EXPECT_EQ(*quot, Polynomial::variable(2, 0));
  EXPECT_FALSE(poly(2, {{{3, 0}, q(1)}}).divide_by_radius_squared());
  EXPECT_THROW(Polynomial(9), std::invalid_argument);
}

TEST(Differentiate, QuotientRule) {
  // d1 (x1 |x|^-2) = |x|^-2 - 2 x1^2 |x|^-4
  RadialExpr d = x_pow(2, 0, -2).derivative(0);
  RadialExpr expected = RadialExpr::radius_power(2, -2) -
                        RadialExpr::term(poly(2, {{{2, 0}, q(2)}}), -4);
  EXPECT_EQ(d, expected);
}

TEST(Differentiate, OddRadiusPower) {
  // d1 |x|^3 = 3 x1 |x|
  RadialExpr d = RadialExpr::radius_power(3, 3).derivative(0);
  EXPECT_EQ(d, RadialExpr::term(poly(3, {{{1}, q(3)}}), 1));
  EXPECT_EQ(d.odd_power(), 1);
}

TEST(Differentiate, PlainPolynomial) {
  RadialExpr e = RadialExpr::polynomial(poly(2, {{{1, 1}, q(1)}}));
  EXPECT_EQ(e.derivative(1), RadialExpr::polynomial(Polynomial::variable(2, 0)));
  EXPECT_THROW(e.derivative(2), std::out_of_range);
}

TEST(Canonicalize, RadiusIdentityVanishes) {
  // (x1^2 + x2^2)|x|^-2 - 1
  RadialExpr::TermMap terms{{-2, poly(2, {{{2, 0}, q(1)}, {{0, 2}, q(1)}})},
                            {0, poly(2, {{{0, 0}, q(-1)}})}};
  auto c = canonicalize(2, terms);
  EXPECT_TRUE(c.is_zero);
}

TEST(Canonicalize, OddCancellation) {
  RadialExpr e = x_pow(2, 0, 1);
  auto c = canonicalize(e - e);
  EXPECT_TRUE(c.is_zero);
}

TEST(Canonicalize, ThreeDimensionalSum) {
  RadialExpr sum = x_pow(3, 0, 0) * x_pow(3, 0, -2) + x_pow(3, 1, 0) * x_pow(3, 1, -2) +
                   x_pow(3, 2, 0) * x_pow(3, 2, -2) - RadialExpr::constant(3, q(1));
  EXPECT_TRUE(canonicalize(sum).is_zero);
}

TEST(Canonicalize, Idempotent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    RadialExpr e = sobolev::testing::random_expr(3, rng);
    auto once = canonicalize(e);
    auto twice = canonicalize(once.expr);
    EXPECT_EQ(once.expr, twice.expr);
    EXPECT_EQ(RadialExpr(3, e.terms()), e);
  }
}

TEST(Evaluate, RationalRadius) {
  std::vector<Rational> p{q(3), q(4)};
  auto v = x_pow(2, 0, -2).evaluate(p);
  EXPECT_EQ(v.even, q(3, 25));
  EXPECT_EQ(v.odd, q(0));
}

TEST(Evaluate, PerfectSquareRadius) {
  std::vector<Rational> p{q(3), q(4)};
  auto v = RadialExpr::radius_power(2, 1).evaluate(p);
  EXPECT_EQ(v.even, q(0));
  EXPECT_EQ(v.odd, q(1));
  EXPECT_DOUBLE_EQ(v.to_double(), 5.0);
}

TEST(Evaluate, IrrationalRadius) {
  std::vector<Rational> p{q(1), q(1)};
  auto v = x_pow(2, 0, 1).evaluate(p);
  EXPECT_EQ(v.even, q(0));
  EXPECT_EQ(v.odd, q(1));
  EXPECT_EQ(v.radius_squared, q(2));
  EXPECT_NEAR(v.to_double(), std::sqrt(2.0), 1e-15);
}

TEST(Evaluate, OriginIsRejected) {
  std::vector<Rational> zero{q(0), q(0)};
  EXPECT_THROW(x_pow(2, 0, -2).evaluate(zero), ZeroPointError);
}

TEST(Homogeneity, Examples) {
  EXPECT_EQ(x_pow(2, 0, -2).homogeneity_degree(), -1);
  EXPECT_EQ(RadialExpr::radius_power(2, 3).homogeneity_degree(), 3);
  RadialExpr mixed = x_pow(2, 0, 0) + RadialExpr::radius_power(2, 2);
  EXPECT_FALSE(mixed.homogeneity_degree().has_value());
  EXPECT_THROW(RadialExpr(2).homogeneity_degree(), ZeroExpressionError);
}

TEST(Homogeneity, LogDerivativesHaveDegreeMinusM) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      auto t = log_derivative_tensor(n, m);
      for (const auto& e : t.entries()) {
        if (!e.is_zero()) {
          EXPECT_EQ(e.homogeneity_degree(), -static_cast<int>(m));
        }
      }
    }
  }
}

TEST(Properties, MixedPartialsCommute) {
  std::mt19937_64 rng(11);
  for (std::size_t dim : {1u, 2u, 3u, 4u}) {
    for (int trial = 0; trial < 25; ++trial) {
      RadialExpr e = sobolev::testing::random_expr(dim, rng);
      std::uniform_int_distribution<std::size_t> axis(0, dim - 1);
      std::size_t i = axis(rng);
      std::size_t j = axis(rng);
      EXPECT_EQ(e.derivative(i).derivative(j), e.derivative(j).derivative(i))
          << e.to_string();
    }
  }
}

TEST(Properties, DerivativeMatchesCentralDifference) {
  std::mt19937_64 rng(23);
  for (std::size_t dim : {1u, 2u, 3u}) {
    for (int trial = 0; trial < 40; ++trial) {
      RadialExpr e = sobolev::testing::random_expr(dim, rng);
      auto xr = sobolev::testing::random_rational_point(dim, rng);
      auto x = sobolev::testing::to_doubles(xr);
      double norm = 0.0;
      for (double v : x) {
        norm += v * v;
      }
      if (norm < 0.25) {
        continue;  // keep away from the singularity
      }
      std::uniform_int_distribution<std::size_t> axis(0, dim - 1);
      std::size_t i = axis(rng);
      double exact = e.derivative(i).evaluate(xr).to_double();
      // Richardson-extrapolated central difference
      auto central = [&](double h) {
        auto xp = x;
        auto xm = x;
        xp[i] += h;
        xm[i] -= h;
        return (e.evaluate_numeric(xp) - e.evaluate_numeric(xm)) / (2 * h);
      };
      double h = 1e-3;
      double fd = (4.0 * central(h / 2) - central(h)) / 3.0;
      double scale = std::max(1.0, std::abs(exact));
      EXPECT_LE(std::abs(fd - exact) / scale, 1e-6) << e.to_string();
    }
  }
}

TEST(Properties, EvaluateExactMatchesNumeric) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    RadialExpr e = sobolev::testing::random_expr(3, rng);
    auto xr = sobolev::testing::random_rational_point(3, rng);
    double exact = e.evaluate(xr).to_double();
    double num = e.evaluate_numeric(sobolev::testing::to_doubles(xr));
    EXPECT_NEAR(num, exact, 1e-9 * std::max(1.0, std::abs(exact)));
  }
}
