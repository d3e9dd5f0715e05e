#include <sobolev/profiles.hpp>
#include <sobolev/verify.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace sobolev {
namespace {

using namespace profiles;

constexpr double kPi = std::numbers::pi;

std::vector<RadialProfile> compact_corpus() {
  return {make_profile(Bump(1.0)), make_profile(GaussianCutoff(1.0, 4.0)), make_profile(LorentzianCutoff(3.0)),
          make_profile(Plateau(1.5)), make_profile(MollifiedExp(0.5, 6.0))};
}

TEST(WeakIdentity, PlanarBumpGivesMinusFourPi) {
  auto rep = weak_identity_check(2, make_profile(Bump(1.0)), 1e-10);
  EXPECT_NEAR(rep.rhs, -4 * kPi, 1e-12);
  EXPECT_NEAR(rep.lhs, -4 * kPi, 1e-6 * 4 * kPi);
  EXPECT_LE(rep.relative_error, 1e-6);
  EXPECT_TRUE(rep.converged);
  EXPECT_GT(rep.evaluations, 0u);
  EXPECT_EQ(rep.profile, "bump(R=1)");
}

TEST(WeakIdentity, CorpusInTwoAndThreeDimensions) {
  for (std::size_t n : {2u, 3u}) {
    for (const auto& v : compact_corpus()) {
      auto rep = weak_identity_check(n, v, default_tolerance(n));
      EXPECT_LE(rep.relative_error, 1e-6) << n << " " << v.id();
    }
  }
  // in 3-D the constant is -28 * 4 pi per unit of v(0)
  auto rep = weak_identity_check(3, make_profile(Bump(1.0)), 1e-10);
  EXPECT_NEAR(rep.rhs, -112 * kPi, 1e-10);
}

TEST(WeakIdentity, FourDimensionsWithRelaxedTolerance) {
  auto rep = weak_identity_check(4, make_profile(GaussianCutoff(2.0, 2.0)), default_tolerance(4));
  EXPECT_LE(rep.relative_error, 1e-6);
}

TEST(WeakIdentity, DilationInvariant) {
  auto base = make_profile(GaussianCutoff(1.0, 2.0));
  for (std::size_t n : {2u, 3u}) {
    auto ref = weak_identity_check(n, base, 1e-11);
    for (double lambda : {0.25, 3.0}) {
      auto rep = weak_identity_check(n, make_profile(Dilated(base, lambda)), 1e-11);
      EXPECT_EQ(rep.rhs, ref.rhs);
      EXPECT_NEAR(rep.lhs, ref.lhs, 1e-8 * std::abs(ref.lhs)) << lambda;
    }
  }
}

TEST(WeakIdentity, VanishesAwayFromOrigin) {
  for (std::size_t n : {2u, 3u}) {
    auto rep = weak_identity_check(n, make_profile(AnnulusBump(1.0, 0.5)), 1e-10);
    EXPECT_EQ(rep.rhs, 0.0);
    EXPECT_LE(std::abs(rep.lhs), 1e-8);
  }
}

TEST(WeakIdentity, Preconditions) {
  EXPECT_THROW(weak_identity_check(1, make_profile(Bump(1.0)), 1e-10), std::invalid_argument);
  EXPECT_THROW(weak_identity_check(2, make_profile(RawExp{}), 1e-10), std::invalid_argument);
}

TEST(Pairing, DirectionIndependent) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (std::size_t n : {2u, 3u}) {
    LogKernel axis(n, first_axis(n));
    for (const auto& v : compact_corpus()) {
      for (double r : {0.2, 0.6, 0.9}) {
        double ref = axis.pairing(v, r);
        for (int k = 0; k < 5; ++k) {
          std::vector<double> d(n);
          for (double& x : d) {
            x = normal(rng);
          }
          LogKernel other(n, d);
          EXPECT_NEAR(other.pairing(v, r), ref, 1e-9 * std::max(std::abs(ref), 1e-12)) << v.id();
        }
      }
    }
  }
}

TEST(Pairing, KernelNormIsSqrtEll) {
  std::vector<double> d{0.3, -0.4, 1.2};
  LogKernel k(3, d);
  EXPECT_NEAR(k.kernel_norm(), std::sqrt(28.0), 1e-13);
}

TEST(CauchySchwarz, HoldsPointwise) {
  std::vector<double> radii;
  for (int i = 1; i < 40; ++i) {
    radii.push_back(0.05 * i);
  }
  for (std::size_t n : {2u, 3u}) {
    for (const auto& v : compact_corpus()) {
      auto rep = cauchy_schwarz_check(n, v, radii, 11);
      EXPECT_TRUE(rep.holds) << v.id() << " " << rep.worst_ratio;
      EXPECT_EQ(rep.samples, radii.size());
    }
  }
  // equality for the log profile itself, where the two tensors are parallel
  auto rep = cauchy_schwarz_check(2, make_profile(Log{}), radii, 3);
  EXPECT_NEAR(rep.worst_ratio, 1.0, 1e-12);
}

TEST(Inequality, OneDimensionalEqualityCase) {
  auto rep = embedding_inequality_check(1, make_profile(MollifiedExp(0.1, 40.0)), 1e-12);
  EXPECT_NEAR(rep.lhs, 1.0, 0.0);
  EXPECT_LE(std::abs(rep.margin), 1e-6);
  auto raw = norm_integral(make_profile(RawExp{}), 1, 1e-13, 40.0);
  EXPECT_NEAR(raw.value, 2.0, 1e-8);
}

TEST(Inequality, StrictInHigherDimensions) {
  for (std::size_t n : {2u, 3u}) {
    auto corpus = peaked_corpus();
    EXPECT_EQ(corpus.size(), 10u);
    for (const auto& v : corpus) {
      auto rep = embedding_inequality_check(n, v, default_tolerance(n));
      EXPECT_TRUE(rep.strict()) << n << " " << v.id() << " margin " << rep.margin;
      EXPECT_GT(rep.margin, 0.0);
    }
  }
}

TEST(Inequality, ExtremalProfileHasSmallMargin) {
  auto rep = embedding_inequality_check(2, make_profile(Extremal(1e-3)), 1e-10);
  EXPECT_GT(rep.margin, 0.0);
  EXPECT_LT(rep.margin, 0.3);
  EXPECT_TRUE(rep.strict());
}

TEST(Inequality, Preconditions) {
  EXPECT_THROW(embedding_inequality_check(2, make_profile(AnnulusBump(1.0, 0.5)), 1e-10),
               std::invalid_argument);
  EXPECT_THROW(embedding_inequality_check(2, make_profile(Log{}), 1e-10), std::invalid_argument);
  EXPECT_THROW(embedding_inequality_check(1, make_profile(RawExp{}), 1e-10), std::invalid_argument);
  EXPECT_THROW(embedding_inequality_check(7, make_profile(Bump(1.0)), 1e-10), std::invalid_argument);
}

}  // namespace
}  // namespace sobolev
