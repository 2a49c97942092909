#include "eqfair/stats.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "eqfair/error.h"
#include "eqfair/special_functions.h"

namespace eqfair {

std::string_view ToString(EffectStrength strength) {
  switch (strength) {
    case EffectStrength::kNegligible: return "negligible";
    case EffectStrength::kSmall: return "small";
    case EffectStrength::kModerate: return "moderate";
    case EffectStrength::kStrong: return "strong";
  }
  return "unknown";
}

EffectStrength EffectStrengthFromString(std::string_view text) {
  for (auto s : {EffectStrength::kNegligible, EffectStrength::kSmall, EffectStrength::kModerate,
                 EffectStrength::kStrong}) {
    if (ToString(s) == text) return s;
  }
  throw InvalidInput(fmt::format("unknown effect strength '{}'", text));
}

double SignificancePolicy::EffectiveAlpha(std::size_t q, std::size_t r) const {
  if (kind == Kind::kBonferroni) return alpha / static_cast<double>(q * r);
  return alpha;
}

std::string SignificancePolicy::Name() const {
  return kind == Kind::kBonferroni ? "bonferroni" : "strict";
}

SignificancePolicy::Kind PolicyKindFromString(std::string_view text) {
  if (text == "strict") return SignificancePolicy::Kind::kStrict;
  if (text == "bonferroni") return SignificancePolicy::Kind::kBonferroni;
  throw InvalidInput(fmt::format("unknown residual policy '{}' (expected strict|bonferroni)", text));
}

std::size_t ResidualMatrix::significant_count() const {
  return static_cast<std::size_t>(
      std::count(significant.values().begin(), significant.values().end(), true));
}

Grid<double> ExpectedMatrix(const ContingencyMatrix& observed) {
  const double n = static_cast<double>(observed.total());
  if (observed.total() <= 0) throw UndefinedStatistic("expected matrix of an all-zero table");
  const auto rows = observed.row_totals();
  const auto cols = observed.column_totals();
  Grid<double> expected(observed.num_groups(), observed.num_cells());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      expected(i, j) = static_cast<double>(cols[j]) * static_cast<double>(rows[i]) / n;
    }
  }
  return expected;
}

PrunedContingency PruneEmpty(const ContingencyMatrix& observed) {
  const auto rows = observed.row_totals();
  const auto cols = observed.column_totals();
  std::vector<std::size_t> keep_rows, keep_cols;
  PrunedContingency out{observed, {}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] > 0) {
      keep_rows.push_back(i);
    } else {
      out.pruned_groups.push_back(observed.group_names()[i]);
    }
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] > 0) {
      keep_cols.push_back(j);
    } else {
      out.pruned_columns.push_back(observed.outcome_cells()[j]);
    }
  }
  if (keep_rows.size() < 2 || keep_cols.size() < 2) {
    throw UndefinedStatistic(fmt::format(
        "equal confusion test undefined: {} non-empty groups and {} non-empty outcome cells "
        "(need at least 2 of each)",
        keep_rows.size(), keep_cols.size()));
  }
  if (out.pruned_groups.empty() && out.pruned_columns.empty()) return out;

  CountGrid counts(keep_rows.size(), keep_cols.size());
  std::vector<std::string> groups;
  std::vector<OutcomeCell> cells;
  for (std::size_t i = 0; i < keep_rows.size(); ++i) {
    groups.push_back(observed.group_names()[keep_rows[i]]);
    for (std::size_t j = 0; j < keep_cols.size(); ++j) {
      counts(i, j) = observed.counts()(keep_rows[i], keep_cols[j]);
    }
  }
  for (auto j : keep_cols) cells.push_back(observed.outcome_cells()[j]);
  out.matrix = ContingencyMatrix(std::move(counts), std::move(groups), observed.labels(),
                                 std::move(cells));
  return out;
}

CochranDiagnostics Cochran(const Grid<double>& expected) {
  CochranDiagnostics d;
  const auto& values = expected.values();
  if (values.empty()) return d;
  const auto at_least_5 = std::count_if(values.begin(), values.end(), [](double e) { return e >= 5.0; });
  d.fraction_cells_expected_ge_5 = static_cast<double>(at_least_5) / static_cast<double>(values.size());
  d.min_expected = *std::min_element(values.begin(), values.end());
  d.passes = d.fraction_cells_expected_ge_5 >= 0.8 && d.min_expected >= 1.0;
  return d;
}

ChiSquaredTestResult EqualConfusionTest(const ContingencyMatrix& observed, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidInput(fmt::format("alpha must lie in (0, 1), got {}", alpha));
  }
  auto pruned = PruneEmpty(observed);
  const auto& o = pruned.matrix;
  auto expected = ExpectedMatrix(o);

  double statistic = 0.0;
  for (std::size_t i = 0; i < o.num_groups(); ++i) {
    for (std::size_t j = 0; j < o.num_cells(); ++j) {
      const double diff = static_cast<double>(o.counts()(i, j)) - expected(i, j);
      statistic += diff * diff / expected(i, j);
    }
  }
  const int dof = static_cast<int>((o.num_groups() - 1) * (o.num_cells() - 1));
  const double p = ChiSquaredSurvival(statistic, dof);
  auto cochran = Cochran(expected);
  return ChiSquaredTestResult{statistic,
                              dof,
                              p,
                              alpha,
                              std::move(pruned.matrix),
                              std::move(expected),
                              std::move(pruned.pruned_columns),
                              std::move(pruned.pruned_groups),
                              cochran};
}

EffectSizeBounds EffectSizeBoundsFor(int min_qr) {
  if (min_qr < 2) throw InvalidInput(fmt::format("min(q, r) must be >= 2, got {}", min_qr));
  // Cohen's w thresholds 0.1 / 0.3 / 0.5 rescaled by the table's degrees of freedom.
  const double scale = std::sqrt(static_cast<double>(min_qr - 1));
  return {0.1 / scale, 0.3 / scale, 0.5 / scale};
}

EffectStrength InterpretEffectSize(double phi, int min_qr) {
  const auto bounds = EffectSizeBoundsFor(min_qr);
  if (!(phi >= 0.0 && phi <= 1.0 + 1e-12)) {
    throw InvalidInput(fmt::format("phi must lie in [0, 1], got {}", phi));
  }
  if (phi >= bounds.strong) return EffectStrength::kStrong;
  if (phi >= bounds.moderate) return EffectStrength::kModerate;
  if (phi >= bounds.small) return EffectStrength::kSmall;
  return EffectStrength::kNegligible;
}

ConfusionParityError ComputeConfusionParityError(const ChiSquaredTestResult& test) {
  const auto& o = test.observed;
  const auto q = static_cast<int>(o.num_groups());
  const auto r = static_cast<int>(o.num_cells());
  const double n = static_cast<double>(o.total());
  const double phi =
      std::clamp(std::sqrt(test.statistic / n / static_cast<double>(std::min(q - 1, r - 1))), 0.0, 1.0);
  const int min_qr = std::min(q, r);
  return {phi, InterpretEffectSize(phi, min_qr), min_qr};
}

ResidualMatrix AdjustedResiduals(const ContingencyMatrix& observed, const Grid<double>& expected,
                                 const SignificancePolicy& policy) {
  const auto q = observed.num_groups();
  const auto r = observed.num_cells();
  if (expected.rows() != q || expected.cols() != r) {
    throw InvalidInput(fmt::format("expected matrix is {}x{}, observed is {}x{}", expected.rows(),
                                   expected.cols(), q, r));
  }
  if (!(policy.alpha > 0.0 && policy.alpha < 1.0)) {
    throw InvalidInput(fmt::format("policy alpha must lie in (0, 1), got {}", policy.alpha));
  }
  const auto rows = observed.row_totals();
  const auto cols = observed.column_totals();
  const double n = static_cast<double>(observed.total());
  for (std::size_t i = 0; i < q; ++i) {
    if (rows[i] == observed.total()) {
      throw UndefinedStatistic(fmt::format("group '{}' holds every observation",
                                           DisplayGroupName(observed.group_names()[i])));
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    if (cols[j] == observed.total()) {
      const auto& c = observed.outcome_cells()[j];
      throw UndefinedStatistic(fmt::format("outcome cell (actual {}, predicted {}) holds every observation",
                                           c.actual, c.predicted));
    }
  }

  ResidualMatrix out{Grid<double>(q, r), policy, 0.0, Grid<bool>(q, r, false)};
  out.critical_value = NormalTwoTailedQuantile(policy.EffectiveAlpha(q, r));
  for (std::size_t i = 0; i < q; ++i) {
    const double row_share = static_cast<double>(rows[i]) / n;
    for (std::size_t j = 0; j < r; ++j) {
      const double e = expected(i, j);
      if (!(e > 0.0)) {
        throw UndefinedStatistic(fmt::format("zero expected count at group '{}', cell {}",
                                             DisplayGroupName(observed.group_names()[i]), j));
      }
      const double col_share = static_cast<double>(cols[j]) / n;
      const double value = (static_cast<double>(observed.counts()(i, j)) - e) /
                           std::sqrt(e * (1.0 - row_share) * (1.0 - col_share));
      out.residuals(i, j) = value;
      out.significant(i, j) = std::fabs(value) > out.critical_value;
    }
  }
  return out;
}

}  // namespace eqfair
