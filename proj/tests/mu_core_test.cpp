#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "mubose/mu_core.hpp"

namespace {

using mubose::DeformationMu;
using mubose::Method;

double factorial(int r) {
  double f = 1.0;
  for (int j = 2; j <= r; ++j) f *= j;
  return f;
}

double alpha_at(double t, double k) { return mubose::ThermoPoint{t, k}.alpha(); }

TEST(MuBracket, Values) {
  EXPECT_NEAR(mubose::mu_bracket(1.0, 0.1), 1.0 / 1.1, 1e-15);
  EXPECT_EQ(mubose::mu_bracket(5.0, 0.0), 5.0);
  EXPECT_DOUBLE_EQ(mubose::mu_bracket(3.0, 0.2), 1.875);
  for (double n = 1.0; n < 1e6; n *= 3.0) EXPECT_LT(mubose::mu_bracket(n, 0.3), 1.0 / 0.3);
}

TEST(DeformationMu, Guards) {
  EXPECT_THROW(DeformationMu(-0.1), mubose::DomainError);
  EXPECT_THROW(DeformationMu(std::nan("")), mubose::DomainError);
  EXPECT_DOUBLE_EQ(DeformationMu::closed_form_bound(3), 0.5);
  EXPECT_TRUE(DeformationMu(0.49).closed_form_admissible(3));
  EXPECT_FALSE(DeformationMu(0.5).closed_form_admissible(3));
  EXPECT_TRUE(DeformationMu(0.5).series_has_pole(3));
  EXPECT_FALSE(DeformationMu(0.6).series_has_pole(3));
}

TEST(ThermoPoint, Alpha) {
  EXPECT_DOUBLE_EQ(alpha_at(120.0, 0.0), 139.57 / 120.0);
  EXPECT_DOUBLE_EQ((mubose::ThermoPoint{100.0, 300.0, 400.0}.alpha()), 5.0);
}

TEST(MeanOccupation, Values) {
  EXPECT_NEAR(mubose::mean_occupation(DeformationMu(0.0), std::log(2.0)).value, 1.0, 1e-15);
  const auto r = mubose::mean_occupation(DeformationMu(0.1), 1.0);
  EXPECT_NEAR(r.value, 0.48368116243507455536, 1e-12);
  EXPECT_EQ(r.method, Method::closed_form);
  EXPECT_LE(r.error_bound, 1e-12);
  EXPECT_NEAR(mubose::mean_occupation(DeformationMu(1e-8), 1.0).value, 1.0 / std::expm1(1.0),
              1e-5);
}

TEST(RMoment, Values) {
  EXPECT_NEAR(mubose::r_moment(DeformationMu(0.0), std::log(2.0), 3).value, 6.0, 1e-14);
  EXPECT_NEAR(mubose::r_moment(DeformationMu(0.1), 1.0, 2).value, 0.40271173395477296678, 1e-12);
  EXPECT_NEAR(mubose::r_moment(DeformationMu(0.1), 1.0, 3).value, 0.4430937574909161852, 1e-12);
  EXPECT_EQ(mubose::r_moment(DeformationMu(0.2), 5.0, 1).value,
            mubose::mean_occupation(DeformationMu(0.2), 5.0).value);
}

TEST(RMoment, GuardNamesTheBound) {
  try {
    mubose::r_moment(DeformationMu(0.6), 1.0, 3);
    FAIL() << "expected DomainError";
  } catch (const mubose::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos) << e.what();
  }
}

TEST(OracleMoment, Values) {
  EXPECT_NEAR(mubose::oracle_moment(DeformationMu(0.0), std::log(2.0), 2).value, 2.0, 1e-10);
  const auto o = mubose::oracle_moment(DeformationMu(0.45), 2.0, 2);
  EXPECT_EQ(o.method, Method::oracle);
  EXPECT_NEAR(o.value, 0.015007772527944936966, 1e-12);
  EXPECT_THROW(mubose::oracle_moment(DeformationMu(0.5), 1.0, 3), mubose::PoleError);
  EXPECT_THROW(mubose::oracle_moment(DeformationMu(0.1), 1e-6, 3, 1e-12, 1000),
               mubose::ConvergenceError);
}

struct GridPoint {
  double mu;
  double alpha;
  int r;
};

class ClosedFormVsOracle : public ::testing::TestWithParam<GridPoint> {};

TEST_P(ClosedFormVsOracle, Agree) {
  const auto [mu, alpha, r] = GetParam();
  const DeformationMu d(mu);
  const double closed = mubose::r_moment(d, alpha, r).value;
  const double oracle = mubose::oracle_moment(d, alpha, r).value;
  if (std::abs(oracle) < 1e-3) {
    EXPECT_NEAR(closed, oracle, 1e-12);
  } else {
    EXPECT_LE(std::abs(closed - oracle), 1e-9 * std::abs(oracle));
  }
  if (r >= 2) {
    const double lc = mubose::intercept(d, alpha, r).value;
    const double lo = mubose::oracle_intercept(d, alpha, r).value;
    EXPECT_LE(std::abs(lc - lo), 1e-9 * std::abs(lo));
  }
}

std::vector<GridPoint> moment_grid() {
  std::vector<GridPoint> out;
  for (double mu : {0.05, 0.1, 0.2, 0.3}) {
    for (double alpha : {0.8, 1.5, 3.0, 10.0}) {
      for (int r = 1; r <= 5; ++r) {
        if (r >= 2 && !(mu < 1.0 / (r - 1))) continue;
        out.push_back({mu, alpha, r});
      }
    }
  }
  return out;
}

INSTANTIATE_TEST_SUITE_P(Grid, ClosedFormVsOracle, ::testing::ValuesIn(moment_grid()));

TEST(Intercept, UndeformedIsExactFactorial) {
  for (int r = 2; r <= 6; ++r) {
    for (double alpha : {0.3, 1.0, 7.0}) {
      EXPECT_EQ(mubose::intercept(DeformationMu(0.0), alpha, r).value, factorial(r) - 1.0);
    }
  }
}

TEST(Intercept, SmallMuStaysNearFactorial) {
  // The first-order shift is about mu r! r(r-1)/2, so an absolute 1e-4
  // window holds for r <= 3 only; r = 4 is checked against that estimate.
  for (double alpha : {1.0, 3.0}) {
    for (int r : {2, 3}) {
      EXPECT_NEAR(mubose::intercept(DeformationMu(1e-6), alpha, r).value, factorial(r) - 1.0,
                  1e-4);
    }
    const double dev = factorial(4) - 1.0 - mubose::intercept(DeformationMu(1e-6), alpha, 4).value;
    const double estimate = 1e-6 * 24.0 * 6.0;
    EXPECT_GT(dev, 0.5 * estimate);
    EXPECT_LT(dev, 3.0 * estimate);
    EXPECT_LT(dev / 23.0, 1e-4);
  }
}

TEST(Intercept, FrozenValue) {
  const auto l = mubose::intercept(DeformationMu(0.2), 1.5, 3);
  EXPECT_NEAR(l.value, 2.4226690276648217491, 1e-10);
  EXPECT_LE(l.error_bound, 1e-12);
}

TEST(Intercept, ReachesAsymptote) {
  EXPECT_NEAR(mubose::intercept(DeformationMu(0.1), 25.0, 2).value, 1.0 / 1.2, 1e-4);
  for (double mu : {0.1, 0.2}) {
    for (int r : {2, 3}) {
      EXPECT_NEAR(mubose::intercept(DeformationMu(mu), 30.0, r).value,
                  mubose::intercept_asymptotic(DeformationMu(mu), r), 1e-6);
    }
  }
}

TEST(Intercept, HugeAlphaReturnsAsymptoteWithNote) {
  const auto l = mubose::intercept(DeformationMu(0.1), 800.0, 3);
  EXPECT_EQ(l.method, Method::asymptotic);
  EXPECT_FALSE(l.note.empty());
  EXPECT_DOUBLE_EQ(l.value, mubose::intercept_asymptotic(DeformationMu(0.1), 3));
}

TEST(Intercept, GuardAndFallback) {
  EXPECT_THROW(mubose::intercept(DeformationMu(0.6), 1.0, 3), mubose::DomainError);
  const auto fb = mubose::intercept(DeformationMu(0.6), 1.0, 3, 1e-12, mubose::Fallback::oracle);
  EXPECT_EQ(fb.method, Method::oracle);
  EXPECT_NEAR(fb.value, mubose::oracle_intercept(DeformationMu(0.6), 1.0, 3).value, 1e-12);
  EXPECT_THROW(mubose::intercept(DeformationMu(0.5), 1.0, 3, 1e-12, mubose::Fallback::oracle),
               mubose::PoleError);
  EXPECT_THROW(mubose::intercept(DeformationMu(0.1), 1.0, 1), mubose::DomainError);
}

TEST(Asymptotics, Values) {
  EXPECT_NEAR(mubose::intercept_asymptotic(DeformationMu(0.1), 2), 1.0 / 1.2, 1e-15);
  EXPECT_NEAR(mubose::intercept_asymptotic(DeformationMu(0.1), 3), 5.7 / (1.2 * 1.3), 1e-14);
  EXPECT_DOUBLE_EQ(mubose::intercept_asymptotic(DeformationMu(0.0), 4), 23.0);
  EXPECT_NEAR(mubose::r3_asymptotic(DeformationMu(0.1)), 0.75838507962253767433, 1e-14);
}

TEST(R3, Values) {
  EXPECT_DOUBLE_EQ(mubose::r3_function(DeformationMu(0.0), 2.0).value, 1.0);
  const auto r3 = mubose::r3_function(DeformationMu(0.2), 2.0);
  EXPECT_NEAR(r3.value, 0.53670337295324383407, 1e-10);
  EXPECT_LE(r3.error_bound, 1e-12);
  EXPECT_NEAR(r3.value, mubose::oracle_r3(DeformationMu(0.2), 2.0).value, 1e-8);
  EXPECT_THROW(mubose::r3_combination(0.0, 1.0), mubose::DomainError);
}

TEST(Distribution, OrderingAndBound) {
  for (double t : {120.0, 180.0}) {
    for (double k = 0.0; k <= 1000.0; k += 200.0) {
      const double a = alpha_at(t, k);
      const double n0 = mubose::mean_occupation(DeformationMu(0.0), a).value;
      const double n1 = mubose::mean_occupation(DeformationMu(0.1), a).value;
      const double n2 = mubose::mean_occupation(DeformationMu(0.2), a).value;
      EXPECT_LT(n2, n1);
      EXPECT_LT(n1, n0);
      EXPECT_LT(n1, 1.0 / 0.1);
      EXPECT_LT(n2, 1.0 / 0.2);
    }
  }
}

TEST(Intercept, FrozenFigureValues) {
  struct Row {
    double mu, t, k, value;
  };
  const Row rows[] = {
      {0.1, 120, 0, 0.742342094704},    {0.1, 180, 0, 0.681525943135},
      {0.2, 120, 0, 0.603193006931},    {0.2, 180, 0, 0.536006020407},
      {0.1, 120, 1000, 0.833281213288}, {0.1, 180, 1000, 0.832470393943},
      {0.2, 120, 1000, 0.714217835208}, {0.2, 180, 1000, 0.713162547876},
  };
  for (const auto& row : rows) {
    EXPECT_NEAR(mubose::intercept(DeformationMu(row.mu), alpha_at(row.t, row.k), 2).value,
                row.value, 1e-11);
  }
}

}  // namespace
