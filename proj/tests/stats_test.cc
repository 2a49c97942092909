#include "eqfair/stats.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "eqfair/error.h"
#include "eqfair/ingestion.h"
#include "eqfair/reproduce.h"
#include "oracles.h"
#include "test_util.h"

namespace eqfair {
namespace {

using testing::Matrix;
using testing::SexTable;
using testing::ToTable;

TEST(ExpectedMatrixTest, SexTableWithinRounding) {
  const auto e = ExpectedMatrix(SexTable());
  const double published[2][4] = {{72, 64, 159, 545}, {274, 242, 602, 2062}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(e(i, j), published[i][j], 0.5) << i << "," << j;
  }
}

TEST(ExpectedMatrixTest, ProportionalRowsAreExact) {
  const auto e = ExpectedMatrix(Matrix(CountGrid{{2, 4}, {1, 2}}));
  EXPECT_EQ(e, (Grid<double>{{2.0, 4.0}, {1.0, 2.0}}));
}

TEST(ExpectedMatrixTest, RandomMatchesDirectFormula) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> count(0, 200);
  for (int trial = 0; trial < 20; ++trial) {
    CountGrid g(3, 4, 0);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 4; ++j) g(i, j) = count(rng) + 1;
    }
    const auto e = ExpectedMatrix(Matrix(g));
    const auto want = oracle::Expected(ToTable(g));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(e(i, j), want[i][j], 1e-9 * want[i][j]);
    }
  }
}

TEST(ExpectedMatrixTest, AllZeroIsUndefined) {
  EXPECT_THROW(ExpectedMatrix(Matrix(CountGrid(2, 2, 0))), UndefinedStatistic);
}

TEST(EqualConfusionTestTest, SexTable) {
  const auto t = EqualConfusionTest(SexTable(), 0.001);
  // Recomputed directly from the counts; see the oracle check below.
  EXPECT_NEAR(t.statistic, oracle::ChiSquared(ToTable(SexTable().counts())), 1e-9);
  EXPECT_NEAR(t.statistic, 59.22, 0.01);
  EXPECT_EQ(t.dof, 3);
  EXPECT_LT(t.p_value, 0.001);
  EXPECT_TRUE(t.unfair());
  EXPECT_TRUE(t.cochran.passes);
  EXPECT_TRUE(t.pruned_columns.empty());
}

TEST(EqualConfusionTestTest, ProportionalRows) {
  const auto t = EqualConfusionTest(Matrix(CountGrid{{2, 4, 6}, {1, 2, 3}}), 0.05);
  EXPECT_NEAR(t.statistic, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(t.p_value, 1.0);
  EXPECT_FALSE(t.unfair());
}

TEST(EqualConfusionTestTest, RandomMatchesOracle) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    // Distribute n = 1000 over a 2x4 grid.
    CountGrid g(2, 4, 0);
    std::uniform_int_distribution<int> cell(0, 7);
    for (int s = 0; s < 1000; ++s) {
      const int c = cell(rng);
      ++g(c / 4, c % 4);
    }
    const auto t = EqualConfusionTest(Matrix(g), 0.05);
    const double want = oracle::ChiSquared(ToTable(g));
    EXPECT_NEAR(t.statistic, want, 1e-9 * std::max(1.0, want));
    EXPECT_NEAR(t.p_value, oracle::ChiSquaredSurvival(want, 3), 1e-10);
  }
}

TEST(EqualConfusionTestTest, PrunesEmptyColumnsAndRows) {
  const auto m = Matrix(CountGrid{{5, 0, 7, 3}, {9, 0, 2, 4}, {0, 0, 0, 0}});
  const auto t = EqualConfusionTest(m, 0.05);
  EXPECT_EQ(t.observed.num_groups(), 2u);
  EXPECT_EQ(t.observed.num_cells(), 3u);
  EXPECT_EQ(t.dof, 2);
  ASSERT_EQ(t.pruned_columns.size(), 1u);
  EXPECT_EQ(t.pruned_columns[0].actual, "c1");
  EXPECT_EQ(t.pruned_groups, (std::vector<std::string>{"g2"}));
  EXPECT_NEAR(t.statistic, oracle::ChiSquared({{5, 7, 3}, {9, 2, 4}}), 1e-12);
}

TEST(EqualConfusionTestTest, Errors) {
  EXPECT_THROW(EqualConfusionTest(SexTable(), 0.0), InvalidInput);
  EXPECT_THROW(EqualConfusionTest(SexTable(), 1.0), InvalidInput);
  EXPECT_THROW(EqualConfusionTest(Matrix(CountGrid{{5, 0}, {3, 0}}), 0.05), UndefinedStatistic);
  EXPECT_THROW(EqualConfusionTest(Matrix(CountGrid{{5, 3}, {0, 0}}), 0.05), UndefinedStatistic);
}

TEST(CochranTest, FlagsSmallExpectedCounts) {
  const auto small = EqualConfusionTest(Matrix(CountGrid{{1, 2, 3}, {2, 1, 4}}), 0.05);
  EXPECT_FALSE(small.cochran.passes);
  EXPECT_LT(small.cochran.min_expected, 5.0);
  const auto c = Cochran(Grid<double>{{5, 5, 5, 5, 0.9}});
  EXPECT_DOUBLE_EQ(c.fraction_cells_expected_ge_5, 0.8);
  EXPECT_FALSE(c.passes);  // min below 1
  EXPECT_TRUE(Cochran(Grid<double>{{5, 5, 5, 5, 1.0}}).passes);
}

TEST(ConfusionParityErrorTest, SexTable) {
  const auto p = ComputeConfusionParityError(EqualConfusionTest(SexTable(), 0.001));
  EXPECT_NEAR(p.phi, 0.12, 0.005);
  EXPECT_EQ(p.strength, EffectStrength::kSmall);
  EXPECT_EQ(p.min_qr, 2);
}

TEST(ConfusionParityErrorTest, ZeroAssociation) {
  const auto p = ComputeConfusionParityError(EqualConfusionTest(Matrix(CountGrid{{2, 4}, {1, 2}}), 0.05));
  EXPECT_NEAR(p.phi, 0.0, 1e-12);
  EXPECT_EQ(p.strength, EffectStrength::kNegligible);
}

TEST(ConfusionParityErrorTest, Intersectional) {
  const auto m = LoadContingency(DefaultTablesDir() / "intersectional.json");
  const auto p = ComputeConfusionParityError(EqualConfusionTest(m, 0.001));
  EXPECT_NEAR(p.phi, 0.16, 0.005);
  EXPECT_EQ(p.min_qr, 4);
}

TEST(EffectSizeTest, PublishedBoundTable) {
  const double published[7][3] = {{.06, .17, .29}, {.05, .15, .25}, {.04, .13, .22}, {.04, .12, .20},
                                  {.04, .11, .19}, {.04, .11, .18}, {.03, .10, .17}};
  auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };
  for (int min_qr = 4; min_qr <= 10; ++min_qr) {
    const auto b = EffectSizeBoundsFor(min_qr);
    EXPECT_DOUBLE_EQ(round2(b.small), published[min_qr - 4][0]) << min_qr;
    EXPECT_DOUBLE_EQ(round2(b.moderate), published[min_qr - 4][1]) << min_qr;
    EXPECT_DOUBLE_EQ(round2(b.strong), published[min_qr - 4][2]) << min_qr;
  }
}

TEST(EffectSizeTest, TwoByTwoAndBuckets) {
  const auto b = EffectSizeBoundsFor(2);
  EXPECT_DOUBLE_EQ(b.small, 0.1);
  EXPECT_DOUBLE_EQ(b.moderate, 0.3);
  EXPECT_DOUBLE_EQ(b.strong, 0.5);
  EXPECT_EQ(InterpretEffectSize(0.05, 2), EffectStrength::kNegligible);
  EXPECT_EQ(InterpretEffectSize(0.1, 2), EffectStrength::kSmall);
  EXPECT_EQ(InterpretEffectSize(0.3, 2), EffectStrength::kModerate);
  EXPECT_EQ(InterpretEffectSize(0.9, 2), EffectStrength::kStrong);
  for (int min_qr = 2; min_qr < 30; ++min_qr) EXPECT_EQ(InterpretEffectSize(0.0, min_qr), EffectStrength::kNegligible);
  EXPECT_THROW(EffectSizeBoundsFor(1), InvalidInput);
  EXPECT_THROW(InterpretEffectSize(1.5, 4), InvalidInput);
}

TEST(EffectSizeTest, StrengthMonotoneInPhi) {
  for (int min_qr = 2; min_qr <= 12; ++min_qr) {
    int last = 0;
    for (int k = 0; k <= 1000; ++k) {
      const int s = static_cast<int>(InterpretEffectSize(k / 1000.0, min_qr));
      EXPECT_GE(s, last);
      last = s;
    }
  }
}

TEST(EffectStrengthTest, NamesRoundTrip) {
  for (auto s : {EffectStrength::kNegligible, EffectStrength::kSmall, EffectStrength::kModerate,
                 EffectStrength::kStrong}) {
    EXPECT_EQ(EffectStrengthFromString(ToString(s)), s);
  }
  EXPECT_THROW(EffectStrengthFromString("huge"), InvalidInput);
}

TEST(AdjustedResidualsTest, SexTable) {
  const auto t = EqualConfusionTest(SexTable(), 0.001);
  const auto r = AdjustedResiduals(t.observed, t.expected, SignificancePolicy::Strict());
  const double published[4] = {-6.3, -2.0, -2.2, 6.6};
  const auto want = oracle::Residuals(ToTable(SexTable().counts()));
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(r.residuals(0, j), published[j], 0.05);
    EXPECT_NEAR(r.residuals(1, j), -published[j], 0.05);
    EXPECT_NEAR(r.residuals(0, j), want[0][j], 1e-9);
  }
  EXPECT_NEAR(r.critical_value, 3.29, 0.005);
  EXPECT_EQ(r.significant_count(), 4u);  // the +/-6.3 and +/-6.6 cells
  EXPECT_TRUE(r.significant(0, 0));
  EXPECT_FALSE(r.significant(0, 1));
}

TEST(AdjustedResidualsTest, IndependenceGivesZero) {
  const auto m = Matrix(CountGrid{{2, 4, 6}, {1, 2, 3}});
  const auto r = AdjustedResiduals(m, ExpectedMatrix(m), SignificancePolicy::Strict());
  for (double v : r.residuals.values()) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_EQ(r.significant_count(), 0u);
}

TEST(AdjustedResidualsTest, RaceTableAfricanAmericanRow) {
  const auto m = LoadContingency(DefaultTablesDir() / "race.json");
  const auto t = EqualConfusionTest(m, 0.001);
  const auto r = AdjustedResiduals(t.observed, t.expected, SignificancePolicy::Strict());
  const double published[4] = {9.6, 1.0, 8.5, -13.1};
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(r.residuals(0, j), published[j], 0.05);
}

TEST(AdjustedResidualsTest, BonferroniCriticalValue) {
  const auto t = EqualConfusionTest(SexTable(), 0.001);
  const auto r = AdjustedResiduals(t.observed, t.expected, SignificancePolicy::Bonferroni(0.05));
  EXPECT_NEAR(r.critical_value, oracle::NormalTwoTailedQuantile(0.05 / 8), 1e-9);
  EXPECT_EQ(SignificancePolicy::Bonferroni(0.05).EffectiveAlpha(2, 4), 0.05 / 8);
  // The critical value rises from 2.58 to about 2.73; the +/-2.2 cells stay below it.
  EXPECT_GT(r.critical_value, 2.7);
  EXPECT_EQ(r.significant_count(), 4u);
}

TEST(AdjustedResidualsTest, Errors) {
  const auto m = SexTable();
  EXPECT_THROW(AdjustedResiduals(m, Grid<double>(2, 3, 1.0), SignificancePolicy::Strict()), InvalidInput);
  Grid<double> zero = ExpectedMatrix(m);
  zero(0, 0) = 0.0;
  EXPECT_THROW(AdjustedResiduals(m, zero, SignificancePolicy::Strict()), UndefinedStatistic);
  const auto degenerate = Matrix(CountGrid{{4, 0}, {6, 0}});
  EXPECT_THROW(AdjustedResiduals(degenerate, ExpectedMatrix(degenerate), SignificancePolicy::Strict()),
               UndefinedStatistic);
  EXPECT_THROW(AdjustedResiduals(m, ExpectedMatrix(m), SignificancePolicy::Strict(0.0)), InvalidInput);
}

TEST(SignificancePolicyTest, Names) {
  EXPECT_EQ(SignificancePolicy::Strict().Name(), "strict");
  EXPECT_EQ(PolicyKindFromString("bonferroni"), SignificancePolicy::Kind::kBonferroni);
  EXPECT_THROW(PolicyKindFromString("holm"), InvalidInput);
}

}  // namespace
}  // namespace eqfair
