#include <sobolev/jet.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

namespace sobolev {
namespace {

using J = Jet<double>;

TEST(Jet, ExpOfIdentity) {
  J x(0.0, {0.0, 1.0, 0.0, 0.0});
  J e = exp(x);
  EXPECT_DOUBLE_EQ(e[0], 1.0);
  EXPECT_DOUBLE_EQ(e[1], 1.0);
  EXPECT_DOUBLE_EQ(e[2], 0.5);
  EXPECT_DOUBLE_EQ(e[3], 1.0 / 6.0);
}

TEST(Jet, Reciprocal) {
  J x(0.0, {1.0, 1.0});
  J r = reciprocal(x);
  EXPECT_DOUBLE_EQ(r[0], 1.0);
  EXPECT_DOUBLE_EQ(r[1], -1.0);
}

TEST(Jet, LogOfShiftedIdentity) {
  J x(0.0, {1.0, 1.0, 0.0});
  J l = log(x);
  EXPECT_DOUBLE_EQ(l[0], 0.0);
  EXPECT_DOUBLE_EQ(l[1], 1.0);
  EXPECT_DOUBLE_EQ(l[2], -0.5);
}

TEST(Jet, DomainErrors) {
  J z(0.0, {0.0, 1.0});
  EXPECT_THROW(reciprocal(z), JetDomainError);
  EXPECT_THROW(log(z), JetDomainError);
  EXPECT_THROW(log(J(0.0, {-1.0, 1.0})), JetDomainError);
  EXPECT_THROW(sqrt(z), JetDomainError);
  EXPECT_THROW(z + J(1.0, {0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(z * J(0.0, {0.0, 1.0, 2.0}), std::invalid_argument);
}

// round trips against the inverse operation
TEST(Jet, InverseIdentities) {
  const int K = 7;
  J x = J::variable(0.7, K);
  J f = exp(x * x) + x;  // arbitrary positive series
  J back = log(exp(f));
  J root = sqrt(f) * sqrt(f);
  J quot = (f * x) / x;
  for (int k = 0; k <= K; ++k) {
    EXPECT_NEAR(back[k], f[k], 1e-12 * (1 + std::abs(f[k])));
    EXPECT_NEAR(root[k], f[k], 1e-12 * (1 + std::abs(f[k])));
    EXPECT_NEAR(quot[k], f[k], 1e-12 * (1 + std::abs(f[k])));
  }
}

// jet of 1/(1+x^2) at x0 against the closed-form derivatives via
// 1/(1+x^2) = Im(1/(x-i))
TEST(Jet, RationalFunctionCoefficients) {
  const int K = 6;
  const double x0 = 0.3;
  J x = J::variable(x0, K);
  J f = 1.0 / (1.0 + x * x);
  for (int k = 0; k <= K; ++k) {
    // c_k = Im((-1)^k / (x0 - i)^(k+1))
    std::complex<double> z(x0, -1.0);
    std::complex<double> c = std::pow(-1.0, k) / std::pow(z, k + 1);
    EXPECT_NEAR(f[k], c.imag(), 1e-13) << k;
  }
}

TEST(Jet, ComposeMatchesDirect) {
  const int K = 5;
  J x = J::variable(0.4, K);
  J inner = x * x + 1.0;
  // outer = jet of log at inner(0)
  J outer = log(J::variable(inner.value(), K));
  J direct = log(inner);
  J composed = compose(outer, inner);
  for (int k = 0; k <= K; ++k) {
    EXPECT_NEAR(composed[k], direct[k], 1e-13);
  }
}

TEST(Jet, IntegrateInvertsDerivative) {
  const int K = 5;
  J x = J::variable(1.5, K);
  J f = exp(x);
  J df(1.5, {f[1], 2 * f[2], 3 * f[3], 4 * f[4], 5 * f[5], 0.0});
  J back = df.integrate(f[0]);
  for (int k = 0; k <= K; ++k) {
    EXPECT_NEAR(back[k], f[k], 1e-13);
  }
  EXPECT_NEAR(f.derivative(3), std::exp(1.5), 1e-12);
}

}  // namespace
}  // namespace sobolev
