#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eqfair/contingency.h"
#include "eqfair/grid.h"

namespace eqfair {

struct CochranDiagnostics {
  double fraction_cells_expected_ge_5 = 0.0;
  double min_expected = 0.0;
  bool passes = false;
};

// Outcome of the equal confusion test. All matrices refer to `observed`,
// the input with zero-total rows and columns removed.
struct ChiSquaredTestResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  double alpha = 0.0;
  ContingencyMatrix observed;
  Grid<double> expected;
  std::vector<OutcomeCell> pruned_columns;
  std::vector<std::string> pruned_groups;
  CochranDiagnostics cochran;

  bool unfair() const { return p_value < alpha; }
};

enum class EffectStrength { kNegligible, kSmall, kModerate, kStrong };

std::string_view ToString(EffectStrength strength);
EffectStrength EffectStrengthFromString(std::string_view text);

struct ConfusionParityError {
  double phi = 0.0;
  EffectStrength strength = EffectStrength::kNegligible;
  int min_qr = 0;
};

// Lower bounds of the small, moderate and strong buckets for min(q, r).
struct EffectSizeBounds {
  double small;
  double moderate;
  double strong;
};

struct SignificancePolicy {
  enum class Kind { kStrict, kBonferroni };

  Kind kind = Kind::kStrict;
  double alpha = 0.001;

  static SignificancePolicy Strict(double alpha = 0.001) { return {Kind::kStrict, alpha}; }
  static SignificancePolicy Bonferroni(double alpha = 0.05) { return {Kind::kBonferroni, alpha}; }

  // Per-cell level: alpha, or alpha / (q * r) under Bonferroni.
  double EffectiveAlpha(std::size_t q, std::size_t r) const;
  std::string Name() const;
};

SignificancePolicy::Kind PolicyKindFromString(std::string_view text);

struct ResidualMatrix {
  Grid<double> residuals;
  SignificancePolicy policy;
  double critical_value = 0.0;
  Grid<bool> significant;

  std::size_t significant_count() const;
};

// Expected counts under independence: row total * column total / n.
Grid<double> ExpectedMatrix(const ContingencyMatrix& observed);

// Removes rows and columns whose total is zero. Throws UndefinedStatistic
// when fewer than two rows or columns remain.
struct PrunedContingency {
  ContingencyMatrix matrix;
  std::vector<OutcomeCell> pruned_columns;
  std::vector<std::string> pruned_groups;
};
PrunedContingency PruneEmpty(const ContingencyMatrix& observed);

// Pearson chi-squared test of independence between group and outcome cell.
ChiSquaredTestResult EqualConfusionTest(const ContingencyMatrix& observed, double alpha);

// Cramer's V of the (pruned) contingency matrix.
ConfusionParityError ComputeConfusionParityError(const ChiSquaredTestResult& test);

EffectSizeBounds EffectSizeBoundsFor(int min_qr);
EffectStrength InterpretEffectSize(double phi, int min_qr);

// Adjusted standardized residuals; `expected` must match `observed`'s shape.
ResidualMatrix AdjustedResiduals(const ContingencyMatrix& observed, const Grid<double>& expected,
                                 const SignificancePolicy& policy);

CochranDiagnostics Cochran(const Grid<double>& expected);

}  // namespace eqfair
