#include <sobolev/certificates.hpp>
#include <sobolev/orthogonal.hpp>
#include <sobolev/tensor.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace sobolev;
using sobolev::testing::poly;
using sobolev::testing::q;

namespace {

// Hessian of log|x| written out by hand: delta_ij |x|^-2 - 2 x_i x_j |x|^-4.
RadialExpr hessian_entry(std::size_t dim, std::size_t i, std::size_t j) {
  RadialExpr out = RadialExpr::term(
      Polynomial::variable(dim, i) * Polynomial::variable(dim, j) * q(-2), -4);
  if (i == j) {
    out += RadialExpr::radius_power(dim, -2);
  }
  return out;
}

RadialExpr half_radius_squared(std::size_t dim) {
  return RadialExpr::polynomial(Polynomial::radius_squared(dim) * q(1, 2));
}

}  // namespace

TEST(MultiIndex, CountsAndMultiplicities) {
  auto keys = sorted_multi_indices(3, 3);
  EXPECT_EQ(keys.size(), 10u);
  EXPECT_EQ(multiplicity(MultiIndex{0, 0, 1}, 3), 3);
  EXPECT_EQ(multiplicity(MultiIndex{0, 1, 2}, 3), 6);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      auto ks = sorted_multi_indices(n, m);
      EXPECT_EQ(ks.size(), binomial(static_cast<unsigned>(n + m - 1), static_cast<unsigned>(m)));
      Integer total = 0;
      for (const auto& k : ks) {
        total += multiplicity(k, n);
      }
      Integer expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), n, m);
      EXPECT_EQ(total, expected) << "N=" << n << " m=" << m;
    }
  }
}

TEST(DerivativeTensor, LogGradient) {
  auto t = log_derivative_tensor(2, 1);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.entry(0), RadialExpr::term(Polynomial::variable(2, 0), -2));
  EXPECT_EQ(t.entry(1), RadialExpr::term(Polynomial::variable(2, 1), -2));
}

TEST(DerivativeTensor, LogHessian) {
  auto t = log_derivative_tensor(2, 2);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.at({0, 0}), hessian_entry(2, 0, 0));
  EXPECT_EQ(t.at({1, 0}), hessian_entry(2, 0, 1));
  EXPECT_EQ(t.at({1, 1}), hessian_entry(2, 1, 1));
  EXPECT_EQ(t.multiplicity_at(t.index_of({0, 1})), 2);
}

TEST(DerivativeTensor, SymmetricStorageMatchesEveryOrdering) {
  // Each sorted entry equals the derivative taken in any axis order.
  RadialExpr u = RadialExpr::term(poly(3, {{{2, 1, 0}, q(1)}, {{0, 0, 1}, q(-3)}}), -1);
  auto t = derivative_tensor(u, 3);
  std::vector<std::size_t> order{2, 0, 1};
  EXPECT_EQ(t.at({0, 1, 2}), u.derivative(order));
  std::vector<std::size_t> order2{1, 0, 0};
  EXPECT_EQ(t.at({0, 0, 1}), u.derivative(order2));
}

TEST(FrobeniusNorm, GradientOfLogIsUnitOverRadius) {
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_EQ(frobenius_norm_sq(log_derivative_tensor(n, 1)), RadialExpr::radius_power(n, -2));
  }
}

TEST(FrobeniusNorm, HessianOfLogMatchesDenseOracle) {
  for (std::size_t n = 1; n <= 5; ++n) {
    // sum over all N^2 ordered pairs of the hand-written Hessian
    RadialExpr dense(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        RadialExpr h = hessian_entry(n, i, j);
        dense += h * h;
      }
    }
    RadialExpr fast = frobenius_norm_sq(log_derivative_tensor(n, 2));
    EXPECT_EQ(fast, dense);
    EXPECT_EQ(fast, RadialExpr::radius_power(n, -4) * q(static_cast<long>(n)));
  }
}

TEST(Contract, MatchesFrobeniusAndGradientPairing) {
  auto t = log_derivative_tensor(3, 2);
  EXPECT_EQ(contract(t, t), frobenius_norm_sq(t));
  for (std::size_t n = 1; n <= 4; ++n) {
    auto g = contract(log_derivative_tensor(n, 1), derivative_tensor(half_radius_squared(n), 1));
    EXPECT_EQ(g, RadialExpr::constant(n, q(1)));
  }
}

TEST(Contract, HessianPairingIsLaplacianOfLog) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto c = contract(log_derivative_tensor(n, 2), derivative_tensor(half_radius_squared(n), 2));
    // oracle: trace of the gradient's Jacobian, taken axis by axis
    auto grad = log_gradient(n);
    RadialExpr lap(n);
    for (std::size_t i = 0; i < n; ++i) {
      lap += grad[i].derivative(i);
    }
    EXPECT_EQ(c, lap);
    EXPECT_EQ(c, RadialExpr::radius_power(n, -2) * q(static_cast<long>(n) - 2));
  }
}

TEST(Contract, ShapeMismatch) {
  EXPECT_THROW(contract(log_derivative_tensor(2, 2), log_derivative_tensor(2, 3)),
               ShapeMismatchError);
  EXPECT_THROW(contract(log_derivative_tensor(2, 2), log_derivative_tensor(3, 2)),
               ShapeMismatchError);
}

TEST(OrthogonalTransform, IdentityLeavesTensorUnchanged) {
  auto t = log_derivative_tensor(3, 3);
  EXPECT_EQ(orthogonal_transform(t, RationalOrthogonal::identity(3)), t);
}

TEST(OrthogonalTransform, RationalRotationOfLinearFunction) {
  RationalOrthogonal a(2, {q(3, 5), q(4, 5), q(-4, 5), q(3, 5)});
  auto t = derivative_tensor(RadialExpr::polynomial(Polynomial::variable(2, 0)), 1);
  auto ta = orthogonal_transform(t, a);
  EXPECT_EQ(ta.entry(0), RadialExpr::constant(2, q(3, 5)));
  EXPECT_EQ(ta.entry(1), RadialExpr::constant(2, q(4, 5)));
  EXPECT_EQ(frobenius_norm_sq(ta), RadialExpr::constant(2, q(1)));
}

TEST(OrthogonalTransform, LogHessianNormIsInvariantExactly) {
  RationalOrthogonal a(2, {q(3, 5), q(4, 5), q(-4, 5), q(3, 5)});
  auto t = log_derivative_tensor(2, 2);
  auto ta = orthogonal_transform(t, a);
  EXPECT_EQ(frobenius_norm_sq(ta), frobenius_norm_sq(t).substitute_orthogonal(a.data()));
  // log|Ax| = log|x|, so the tensor itself is unchanged
  EXPECT_EQ(ta, t);
}

TEST(OrthogonalTransform, RejectsNonOrthogonal) {
  EXPECT_THROW(RationalOrthogonal(2, {q(1), q(1), q(0), q(1)}), NonOrthogonalError);
  EXPECT_THROW(RealOrthogonal(2, {1.0, 1e-9, 0.0, 1.0}), NonOrthogonalError);
  EXPECT_THROW(orthogonal_transform(log_derivative_tensor(2, 1), RationalOrthogonal::identity(3)),
               ShapeMismatchError);
}

TEST(OrthogonalTransform, RandomRationalMatricesAreExactlyOrthogonal) {
  std::mt19937_64 rng(99);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int k = 0; k < 5; ++k) {
      EXPECT_NO_THROW(random_rational_orthogonal(n, rng));
    }
  }
}

// |d^m u_A(x)| = |(d^m u)(Ax)| for u in the symbolic class.
TEST(Invariance, SymbolicTensorsUnderRationalRotations) {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 2; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (int trial = 0; trial < 3; ++trial) {
        RadialExpr u = sobolev::testing::random_expr(n, rng, 2);
        auto a = random_rational_orthogonal(n, rng);
        auto t = derivative_tensor(u, m);
        auto direct = derivative_tensor(u.substitute_orthogonal(a.data()), m);
        auto via_rule = orthogonal_transform(t, a);
        EXPECT_EQ(via_rule, direct);
        EXPECT_EQ(frobenius_norm_sq(direct), frobenius_norm_sq(t).substitute_orthogonal(a.data()));
      }
    }
  }
}

TEST(Invariance, NumericNormsAndContractions) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      RadialExpr u = sobolev::testing::random_expr(n, rng, 2);
      RadialExpr v = sobolev::testing::random_expr(n, rng, 2);
      auto tu = derivative_tensor(u, m);
      auto tv = derivative_tensor(v, m);
      for (int trial = 0; trial < 10; ++trial) {
        auto a = random_real_orthogonal(n, rng);
        std::vector<double> x(n);
        for (auto& c : x) {
          c = normal(rng);
        }
        auto y = a.apply(x);
        auto tu_y = evaluate_tensor(tu, y);
        auto tv_y = evaluate_tensor(tv, y);
        auto tu_x = orthogonal_transform(tu_y, a);
        auto tv_x = orthogonal_transform(tv_y, a);
        double n0 = frobenius_norm_sq(tu_y);
        double n1 = frobenius_norm_sq(tu_x);
        EXPECT_LE(std::abs(std::sqrt(n1) - std::sqrt(n0)), 1e-10 * std::sqrt(n0));
        double c0 = contract(tu_y, tv_y);
        double c1 = contract(tu_x, tv_x);
        double scale = std::sqrt(n0 * frobenius_norm_sq(tv_y));
        EXPECT_LE(std::abs(c1 - c0), 1e-10 * scale);
      }
    }
  }
}

TEST(EllSymbolic, KnownValues) {
  EXPECT_EQ(ell_symbolic(2, 2), q(2));
  EXPECT_EQ(ell_symbolic(3, 3), q(28));
  EXPECT_EQ(ell_symbolic(5, 1), q(1));
  EXPECT_EQ(ell_symbolic(4, 2), q(4));
  EXPECT_EQ(ell_symbolic(1, 1), q(1));
}

TEST(EllSymbolic, RadialityForAllSmallCases) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t m = 1; m <= 5; ++m) {
      EXPECT_NO_THROW({
        Rational v = ell_symbolic(n, m);
        EXPECT_GT(v, 0);
      });
    }
  }
}

TEST(OperatorL, VanishesAwayFromOrigin) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto f = operator_L_apply(n);
    EXPECT_TRUE(canonicalize(f).is_zero) << "N=" << n << ": " << f.to_string();
  }
}

TEST(OperatorL, NonRadialPerturbationIsDetected) {
  // the same machinery applied to u = x1^2 gives d11(|x|^2 * 2) = 4
  std::size_t n = 2;
  auto t = derivative_tensor(RadialExpr::polynomial(poly(n, {{{2, 0}, q(1)}})), n);
  RadialExpr weight = RadialExpr::radius_power(n, static_cast<int>(n));
  std::vector<RadialExpr> parts;
  for (std::size_t k = 0; k < t.size(); ++k) {
    parts.push_back((t.entry(k) * weight).derivative(t.keys()[k]) * Rational(t.multiplicity_at(k)));
  }
  EXPECT_EQ(sum_of(n, parts), RadialExpr::constant(n, q(4)));
}
