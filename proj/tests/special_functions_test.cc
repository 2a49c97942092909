#include "eqfair/special_functions.h"

#include <cmath>

#include "gtest/gtest.h"
#include "eqfair/error.h"
#include "oracles.h"

namespace eqfair {
namespace {

TEST(LogGammaTest, MatchesStandardLibrary) {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 50.5, 100.0, 500.0}) {
    EXPECT_NEAR(LogGamma(x), std::lgamma(x), 1e-12 * std::max(1.0, std::fabs(std::lgamma(x)))) << x;
  }
  EXPECT_THROW(LogGamma(0.0), InvalidInput);
}

TEST(ChiSquaredSurvivalTest, AtZeroIsOne) {
  for (int dof : {1, 2, 3, 10, 200}) EXPECT_EQ(ChiSquaredSurvival(0.0, dof).value(), 1.0);
}

TEST(ChiSquaredSurvivalTest, KnownCriticalValues) {
  // Oracle values by quadrature of the density.
  EXPECT_NEAR(oracle::ChiSquaredSurvival(7.8147, 3), 0.0500, 1e-4);
  EXPECT_NEAR(oracle::ChiSquaredSurvival(10.828, 1), 0.00100, 1e-5);
  EXPECT_NEAR(ChiSquaredSurvival(7.8147, 3).value(), 0.0500, 1e-4);
  EXPECT_NEAR(ChiSquaredSurvival(10.828, 1).value(), 0.00100, 1e-5);
}

TEST(ChiSquaredSurvivalTest, MatchesQuadratureOracle) {
  for (int dof : {1, 2, 3, 4, 7, 10, 50, 200}) {
    for (double x : {0.01, 0.5, 1.0, 2.5, 5.0, 9.9, 10.1, 30.0, 100.0, 250.0, 700.0, 1000.0}) {
      EXPECT_NEAR(ChiSquaredSurvival(x, dof).value(), oracle::ChiSquaredSurvival(x, dof), 1e-12)
          << "dof=" << dof << " x=" << x;
    }
  }
}

TEST(ChiSquaredSurvivalTest, ClosedFormForTwoDegrees) {
  for (double x = 0.0; x <= 1000.0; x += 3.25) {
    EXPECT_NEAR(ChiSquaredSurvival(x, 2).value(), std::max(std::exp(-x / 2.0), 1e-300), 1e-12) << x;
  }
}

TEST(ChiSquaredSurvivalTest, Monotonicity) {
  for (int dof : {1, 2, 5, 30}) {
    double previous = 1.0;
    for (double x = 0.0; x < 200.0; x += 0.37) {
      const double v = ChiSquaredSurvival(x, dof);
      EXPECT_LE(v, previous + 1e-15);
      previous = v;
    }
  }
  for (double x : {0.5, 3.0, 20.0}) {
    double previous = 0.0;
    for (int dof = 1; dof < 60; ++dof) {
      const double v = ChiSquaredSurvival(x, dof);
      EXPECT_GE(v, previous - 1e-15);
      previous = v;
    }
  }
}

TEST(ChiSquaredSurvivalTest, SaturatesInsteadOfUnderflowing) {
  const double v = ChiSquaredSurvival(1e6, 1);
  EXPECT_GT(v, 0.0);
  EXPECT_LE(v, 1e-299);
  EXPECT_EQ(ChiSquaredSurvival(INFINITY, 3).value(), 1e-300);
}

TEST(ChiSquaredSurvivalTest, RejectsBadArguments) {
  EXPECT_THROW(ChiSquaredSurvival(-1.0, 2), InvalidInput);
  EXPECT_THROW(ChiSquaredSurvival(1.0, 0), InvalidInput);
  EXPECT_THROW(ChiSquaredSurvival(NAN, 1), InvalidInput);
}

TEST(NormalTest, TwoTailedP) {
  EXPECT_EQ(NormalTwoTailedP(0.0).value(), 1.0);
  EXPECT_NEAR(NormalTwoTailedP(3.29).value(), 0.001, 5e-5);
  EXPECT_NEAR(NormalTwoTailedP(1.959964).value(), 0.0500, 1e-5);
  EXPECT_NEAR(NormalTwoTailedP(1.959964).value(), oracle::NormalTwoTailedP(1.959964), 1e-12);
  EXPECT_EQ(NormalTwoTailedP(-2.5).value(), NormalTwoTailedP(2.5).value());
  EXPECT_EQ(NormalTwoTailedP(100.0).value(), 0.0);
}

TEST(NormalTest, Quantile) {
  EXPECT_NEAR(NormalTwoTailedQuantile(0.001), 3.29, 0.005);
  EXPECT_LT(NormalTwoTailedQuantile(0.9999), 1e-3);
  // Bonferroni level for two groups and four outcome cells.
  const double bonferroni = 0.05 / (2 * 4);
  EXPECT_NEAR(NormalTwoTailedQuantile(bonferroni), oracle::NormalTwoTailedQuantile(bonferroni), 1e-9);
  EXPECT_THROW(NormalTwoTailedQuantile(0.0), InvalidInput);
  EXPECT_EQ(NormalTwoTailedQuantile(1.0), 0.0);
  EXPECT_THROW(NormalTwoTailedQuantile(1.5), InvalidInput);
}

TEST(NormalTest, QuantileInvertsPValue) {
  for (double z = 0.0; z <= 8.0; z += 0.05) {
    EXPECT_NEAR(NormalTwoTailedQuantile(NormalTwoTailedP(z)), z, 1e-9) << z;
  }
}

}  // namespace
}  // namespace eqfair
