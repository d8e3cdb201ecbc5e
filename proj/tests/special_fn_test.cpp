#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mubose/special_fn.hpp"

namespace {

using mubose::LerchQuery;
using mubose::lerch_phi_s1;

TEST(LerchPhi, ZeroArgumentKeepsFirstTerm) {
  EXPECT_DOUBLE_EQ(lerch_phi_s1({0.0, 2.5, 1e-12}), 0.4);
}

TEST(LerchPhi, LogarithmIdentityAtUnitShift) {
  EXPECT_NEAR(lerch_phi_s1({0.5, 1.0, 1e-12}), -std::log(0.5) / 0.5, 2e-12);
}

TEST(LerchPhi, FrozenValue) {
  EXPECT_NEAR(lerch_phi_s1({std::exp(-1.0), 10.0, 1e-12}), 0.15054594736169497238, 1e-12);
}

TEST(LerchPhi, RejectsOutOfDomain) {
  EXPECT_THROW(lerch_phi_s1({1.0, 1.0, 1e-12}), mubose::DomainError);
  EXPECT_THROW(lerch_phi_s1({-0.1, 1.0, 1e-12}), mubose::DomainError);
  EXPECT_THROW(lerch_phi_s1({0.5, 0.0, 1e-12}), mubose::DomainError);
  EXPECT_THROW(lerch_phi_s1({0.5, -2.0, 1e-12}), mubose::DomainError);
}

TEST(LerchPhi, TermCapSurfacesAsConvergenceError) {
  EXPECT_THROW(lerch_phi_s1({0.999999, 1.0, 1e-12}, 1000), mubose::ConvergenceError);
}

TEST(LerchPhi, TailBoundIsHonest) {
  const auto s = mubose::lerch_sum<double>(0.9, 3.0, 1e-12);
  EXPECT_LE(s.tail_bound, 1e-12);
  const auto finer = mubose::lerch_sum<double>(0.9, 3.0, 1e-15);
  EXPECT_LE(std::abs(finer.value - s.value), s.tail_bound + 1e-14);
  EXPECT_GT(finer.terms, s.terms);
}

class LerchGrid : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  std::uniform_real_distribution<double> zdist{0.0, 0.95};
  std::uniform_real_distribution<double> adist{0.05, 30.0};
};

TEST_F(LerchGrid, ShiftIdentity) {
  constexpr double tol = 1e-12;
  for (int i = 0; i < 200; ++i) {
    const double z = zdist(rng);
    const double a = adist(rng);
    const double lhs = lerch_phi_s1({z, a, tol}) - z * lerch_phi_s1({z, a + 1.0, tol});
    EXPECT_NEAR(lhs, 1.0 / a, 2.0 * tol) << "z=" << z << " a=" << a;
  }
}

TEST_F(LerchGrid, TighterToleranceMovesResultByLessThanTol) {
  constexpr double tol = 1e-10;
  for (int i = 0; i < 100; ++i) {
    const double z = zdist(rng);
    const double a = adist(rng);
    EXPECT_LE(std::abs(lerch_phi_s1({z, a, tol}) - lerch_phi_s1({z, a, tol / 10.0})), tol);
  }
}

TEST(LerchPhi, MonotoneInBothArguments) {
  double prev = std::numeric_limits<double>::infinity();
  for (double a = 0.25; a < 20.0; a += 0.25) {
    const double v = lerch_phi_s1({0.6, a, 1e-13});
    EXPECT_LT(v, prev);
    prev = v;
  }
  prev = -1.0;
  for (double z = 0.0; z < 0.95; z += 0.05) {
    const double v = lerch_phi_s1({z, 1.7, 1e-13});
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Stirling, SmallTable) {
  EXPECT_EQ(mubose::stirling2(3, 2), 3);
  EXPECT_EQ(mubose::stirling2(4, 2), 7);
  EXPECT_EQ(mubose::stirling2(0, 0), 1);
  EXPECT_EQ(mubose::stirling2(5, 0), 0);
  EXPECT_EQ(mubose::stirling2(2, 5), 0);
  EXPECT_EQ(mubose::stirling2(10, 4), 34105);
}

TEST(Stirling, RowSumsAreBellNumbers) {
  const unsigned long long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (int n = 0; n <= 10; ++n) {
    mubose::ExactInt sum = 0;
    for (int k = 0; k <= n; ++k) sum += mubose::stirling2(n, k);
    EXPECT_EQ(sum, bell[n]) << n;
  }
}

TEST(Stirling, OverflowIsReportedNotWrapped) {
  mubose::StirlingTable table(64);
  bool any = false;
  for (int k = 0; k <= 64; ++k) {
    if (table.overflowed(64, k)) {
      any = true;
      EXPECT_THROW(table.at(64, k), mubose::OverflowError);
    }
  }
  EXPECT_TRUE(any);
  EXPECT_THROW(table.at(65, 1), mubose::RangeError);
}

TEST(GCoefficient, RecurrenceSeeds) {
  EXPECT_EQ(mubose::g_coeff(0, 0), 1);
  EXPECT_EQ(mubose::g_coeff(1, 0), 1);
  EXPECT_EQ(mubose::g_coeff(1, 1), 2);
  EXPECT_EQ(mubose::g_coeff(2, 2), 6);
  EXPECT_THROW(mubose::g_coeff(2, 3), mubose::RangeError);
  EXPECT_THROW(mubose::g_coeff(2, -1), mubose::RangeError);
}

TEST(GCoefficient, MatchesStirlingClosedForm) {
  for (int s = 0; s <= 20; ++s) {
    for (int j = 0; j <= s; ++j) {
      EXPECT_EQ(mubose::g_coeff(s, j),
                mubose::factorial_exact(j + 1) * mubose::stirling2(s + 1, j + 1))
          << "s=" << s << " j=" << j;
    }
  }
}

}  // namespace
