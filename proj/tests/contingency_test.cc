#include "eqfair/contingency.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "eqfair/error.h"
#include "oracles.h"

namespace eqfair {
namespace {

std::vector<LabeledSample> Expand(const std::vector<std::string>& groups, const CountGrid& counts,
                                  const std::vector<std::string>& labels) {
  std::vector<LabeledSample> samples;
  const auto cells = CanonicalCells(labels);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      for (std::int64_t c = 0; c < counts(i, j); ++c) {
        samples.push_back({{groups[i]}, cells[j].predicted, cells[j].actual});
      }
    }
  }
  return samples;
}

TEST(BuildContingencyTest, ReproducesSexTable) {
  const CountGrid published{{27, 50, 137, 627}, {319, 256, 624, 1980}};
  auto samples = Expand({"Female", "Male"}, published, {"+", "-"});
  std::shuffle(samples.begin(), samples.end(), std::mt19937(7));
  const auto m = BuildContingency(samples, std::vector<std::string>{"+", "-"},
                                  std::vector<std::string>{"Female", "Male"});
  EXPECT_EQ(m.counts(), published);
  EXPECT_EQ(m.total(), 4020);
  EXPECT_EQ(m.outcome_cells()[1], (OutcomeCell{"+", "-"}));
}

TEST(BuildContingencyTest, OneSamplePerCorrectCell) {
  std::vector<LabeledSample> samples = {
      {{"a"}, "1", "1"}, {{"a"}, "0", "0"}, {{"b"}, "1", "1"}, {{"b"}, "0", "0"}};
  const auto m = BuildContingency(samples, std::vector<std::string>{"1", "0"});
  EXPECT_EQ(m.counts(), (CountGrid{{1, 0, 0, 1}, {1, 0, 0, 1}}));
  EXPECT_EQ(m.group_names(), (std::vector<std::string>{"a", "b"}));
}

TEST(BuildContingencyTest, MatchesBruteForceTally) {
  std::mt19937 rng(11);
  const std::vector<std::string> groups = {"g1", "g2", "g3"}, labels = {"x", "y", "z"};
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<LabeledSample> samples;
  for (int s = 0; s < 200; ++s) samples.push_back({{groups[pick(rng)]}, labels[pick(rng)], labels[pick(rng)]});

  const auto m = BuildContingency(samples);
  const auto tally = oracle::Tally(samples, [](const LabeledSample& s) { return s.group_key[0]; });
  ASSERT_EQ(m.num_cells(), 9u);
  for (std::size_t i = 0; i < m.num_groups(); ++i) {
    for (std::size_t j = 0; j < m.num_cells(); ++j) {
      const auto& c = m.outcome_cells()[j];
      auto it = tally.find({m.group_names()[i], c.actual, c.predicted});
      EXPECT_EQ(m.counts()(i, j), it == tally.end() ? 0 : it->second);
    }
  }
}

TEST(BuildContingencyTest, DefaultsAndZeroColumns) {
  std::vector<LabeledSample> samples = {{{"m"}, "b", "b"}, {{"f"}, "a", "b"}, {{"m"}, "a", "a"}};
  const auto m = BuildContingency(samples);
  EXPECT_EQ(m.group_names(), (std::vector<std::string>{"m", "f"}));  // first appearance
  EXPECT_EQ(m.labels(), (std::vector<std::string>{"a", "b"}));       // lexicographic
  EXPECT_EQ(m.num_cells(), 4u);
  EXPECT_EQ(m.column_totals(), (std::vector<std::int64_t>{1, 0, 1, 1}));
}

TEST(BuildContingencyTest, MultiAttributeKeysAreJoined) {
  std::vector<LabeledSample> samples = {{{"F", "A"}, "+", "+"}, {{"M", "A"}, "+", "-"}};
  const auto m = BuildContingency(samples);
  EXPECT_EQ(DisplayGroupName(m.group_names()[0]), "F × A");
}

TEST(BuildContingencyTest, Errors) {
  EXPECT_THROW(BuildContingency(std::vector<LabeledSample>{}), InvalidInput);
  std::vector<LabeledSample> ragged = {{{"a"}, "1", "1"}, {{"b", "c"}, "1", "0"}};
  EXPECT_THROW(BuildContingency(ragged), InvalidInput);
  std::vector<LabeledSample> ok = {{{"a"}, "1", "1"}, {{"b"}, "2", "1"}};
  try {
    BuildContingency(ok, std::vector<std::string>{"1"});
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("'2'"), std::string::npos);
  }
  std::vector<LabeledSample> single = {{{"a"}, "1", "1"}, {{"a"}, "0", "1"}};
  EXPECT_THROW(BuildContingency(single), InvalidInput);
}

TEST(ContingencyMatrixTest, RejectsNegativeCounts) {
  EXPECT_THROW(ContingencyMatrix::WithCanonicalCells(CountGrid{{1, -1, 0, 0}, {0, 0, 0, 1}}, {"a", "b"}, {"+", "-"}),
               InvalidInput);
  EXPECT_THROW(ContingencyMatrix::WithCanonicalCells(CountGrid{{1, 1, 0, 0}, {0, 0, 0, 1}}, {"a", "a"}, {"+", "-"}),
               InvalidInput);
}

TEST(ConfusionMatrixOfTest, UnflattensMaleRow) {
  const auto m = ContingencyMatrix::WithCanonicalCells(CountGrid{{27, 50, 137, 627}, {319, 256, 624, 1980}},
                                                       {"Female", "Male"}, {"+", "-"});
  const auto c = ConfusionMatrixOf(m, 1);
  EXPECT_EQ(c(0, 0), 319);  // TP
  EXPECT_EQ(c(0, 1), 256);  // FN
  EXPECT_EQ(c(1, 0), 624);  // FP
  EXPECT_EQ(c(1, 1), 1980); // TN
  EXPECT_THROW(ConfusionMatrixOf(m, 2), InvalidInput);
}

TEST(ConfusionMatrixOfTest, ZeroRowAndRoundTrip) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> count(0, 50);
  CountGrid counts(2, 9, 0);
  for (std::size_t j = 0; j < 9; ++j) counts(1, j) = count(rng);
  const auto m = ContingencyMatrix::WithCanonicalCells(counts, {"zero", "random"}, {"a", "b", "c"});
  EXPECT_EQ(ConfusionMatrixOf(m, 0), ConfusionGrid(3, 3, 0));
  const auto c = ConfusionMatrixOf(m, 1);
  EXPECT_EQ(c.values(), counts.row(1));
}

TEST(DerivedRatesTest, OverallCompasMatrix) {
  // TP = 346, FN = 306, FP = 761, TN = 2607.
  const ConfusionGrid overall{{346, 306}, {761, 2607}};
  const auto rates = ComputeDerivedRates(overall, std::vector<std::string>{"+", "-"});
  ASSERT_TRUE(rates.binary);
  EXPECT_NEAR(*rates.accuracy, 0.73, 0.005);
  EXPECT_NEAR(*rates.binary->precision, 0.31, 0.005);
  EXPECT_NEAR(*rates.binary->recall, 0.53, 0.005);
}

TEST(DerivedRatesTest, PerfectClassifier) {
  const auto rates = ComputeDerivedRates(ConfusionGrid{{5, 0, 0}, {0, 3, 0}, {0, 0, 9}});
  EXPECT_DOUBLE_EQ(*rates.accuracy, 1.0);
  EXPECT_FALSE(rates.binary);
  for (const auto& c : rates.per_class) {
    EXPECT_DOUBLE_EQ(*c.precision, 1.0);
    EXPECT_DOUBLE_EQ(*c.recall, 1.0);
    EXPECT_DOUBLE_EQ(*c.specificity, 1.0);
  }
}

TEST(DerivedRatesTest, MatchesDirectFormulas) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> count(1, 500);
  for (int trial = 0; trial < 50; ++trial) {
    const double tp = count(rng), fn = count(rng), fp = count(rng), tn = count(rng);
    const ConfusionGrid g{{static_cast<std::int64_t>(tp), static_cast<std::int64_t>(fn)},
                          {static_cast<std::int64_t>(fp), static_cast<std::int64_t>(tn)}};
    const auto r = ComputeDerivedRates(g);
    EXPECT_DOUBLE_EQ(*r.binary->precision, tp / (tp + fp));
    EXPECT_DOUBLE_EQ(*r.binary->negative_predictive_value, tn / (tn + fn));
    EXPECT_DOUBLE_EQ(*r.binary->recall, tp / (tp + fn));
    EXPECT_DOUBLE_EQ(*r.binary->specificity, tn / (tn + fp));
    EXPECT_DOUBLE_EQ(*r.accuracy, (tp + tn) / (tp + tn + fp + fn));
  }
}

TEST(DerivedRatesTest, ZeroDenominatorsAreUndefined) {
  // No positive predictions: precision undefined, never 0.
  const auto r = ComputeDerivedRates(ConfusionGrid{{0, 4}, {0, 6}});
  EXPECT_FALSE(r.binary->precision.has_value());
  EXPECT_DOUBLE_EQ(*r.binary->recall, 0.0);
  const auto empty = ComputeDerivedRates(ConfusionGrid(2, 2, 0));
  EXPECT_FALSE(empty.accuracy.has_value());
  EXPECT_THROW(ComputeDerivedRates(ConfusionGrid(1, 1, 0)), InvalidInput);
}

}  // namespace
}  // namespace eqfair
