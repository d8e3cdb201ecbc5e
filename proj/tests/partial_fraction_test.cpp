#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mubose/partial_fraction.hpp"

namespace {

// Reference weights for orders 1 to 3, written out by hand.
std::vector<double> reference_a(int r, double mu) {
  switch (r) {
    case 1:
      return {-1.0};
    case 2:
      return {-1.0 - 1.0 / mu, -1.0 + 1.0 / mu};
    case 3:
      return {-1.0 - 1.5 / mu - 0.5 / (mu * mu), -1.0 + 1.0 / (mu * mu),
              -1.0 + 1.5 / mu - 0.5 / (mu * mu)};
    default:
      return {};
  }
}

void expect_rel(double got, double want, double rel) {
  EXPECT_LE(std::abs(got - want), rel * std::max(1.0, std::abs(want)))
      << "got " << got << " want " << want;
}

TEST(ACoeffs, SmallOrders) {
  EXPECT_EQ(mubose::a_coeffs(1, 0.3).values, std::vector<double>{-1.0});
  const auto a2 = mubose::a_coeffs(2, 0.5);
  ASSERT_EQ(a2.size(), 2u);
  EXPECT_DOUBLE_EQ(a2[0], -3.0);
  EXPECT_DOUBLE_EQ(a2[1], 1.0);
  const auto a3 = mubose::a_coeffs(3, 0.5);
  ASSERT_EQ(a3.size(), 3u);
  EXPECT_DOUBLE_EQ(a3[0], -6.0);
  EXPECT_DOUBLE_EQ(a3[1], 3.0);
  EXPECT_NEAR(a3[2], 0.0, 1e-15);
}

TEST(ACoeffs, MatchReferenceFormsOnSampledMu) {
  for (int i = 1; i <= 20; ++i) {
    const double mu = 0.5 * i / 20.0;
    for (int r = 1; r <= 3; ++r) {
      const auto got = mubose::a_coeffs(r, mu);
      const auto want = reference_a(r, mu);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t l = 0; l < want.size(); ++l) expect_rel(got[l], want[l], 1e-12);
    }
  }
}

TEST(ACoeffs, LargeMuSumTendsToMinusOrder) {
  for (int r = 1; r <= 8; ++r) {
    const auto a = mubose::a_coeffs(r, 1e6);
    double sum = 0.0;
    for (double v : a.values) sum += v;
    EXPECT_NEAR(sum, -r, 1e-4) << r;
  }
}

TEST(ACoeffs, RejectsBadDomain) {
  EXPECT_THROW(mubose::a_coeffs(0, 0.1), mubose::DomainError);
  EXPECT_THROW(mubose::a_coeffs(2, 0.0), mubose::DomainError);
  EXPECT_THROW(mubose::a_coeffs(2, -0.5), mubose::DomainError);
}

TEST(ExpansionResidual, Examples) {
  EXPECT_NEAR(mubose::expansion_residual(1, 0.2, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(mubose::expansion_residual(3, 0.1, 7.5), 0.0, 1e-12);
  EXPECT_NEAR(mubose::expansion_residual(5, 0.05, 2.0), 0.0, 1e-12);
}

TEST(ExpansionResidual, PoleIsReported) {
  // 1 + 0.5 (n - 1) vanishes at n = -1.
  EXPECT_THROW(mubose::expansion_residual(2, 0.5, -1.0), mubose::PoleError);
}

TEST(ExpansionResidual, RandomizedGrid) {
  std::mt19937_64 rng(7);
  for (int r = 1; r <= 8; ++r) {
    const double mu_max = r == 1 ? 1.0 : 1.0 / (r - 1);
    std::uniform_real_distribution<double> mu_dist(1e-3, mu_max);
    std::uniform_real_distribution<double> n_dist(-5.0, 40.0);
    int checked = 0;
    while (checked < 100) {
      const double mu = mu_dist(rng);
      const double n = n_dist(rng);
      double residual = 0.0;
      try {
        residual = mubose::expansion_residual(r, mu, n);
      } catch (const mubose::PoleError&) {
        continue;
      }
      const double scale = std::abs(mubose::fraction_product(r, mu, n));
      EXPECT_LE(std::abs(residual), std::max(1e-10 * scale, 1e-12))
          << "r=" << r << " mu=" << mu << " n=" << n;
      ++checked;
    }
  }
}

TEST(FractionProduct, VanishesAtIntegerBelowOrder) {
  for (int r = 2; r <= 6; ++r) {
    for (int n = 0; n < r; ++n) EXPECT_EQ(mubose::fraction_product(r, 0.1, n), 0.0);
  }
  EXPECT_NEAR(mubose::fraction_product(2, 0.1, 3.0), (3.0 / 1.3) * (2.0 / 1.2), 1e-15);
}

}  // namespace
