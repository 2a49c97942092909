#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eqfair/contingency.h"
#include "eqfair/groups.h"
#include "eqfair/stats.h"

namespace eqfair {

inline constexpr std::string_view kReportSchema = "eqfair.report/1";

// One cell of a rate table: its count, its share of the group total and its
// share of the enclosing basis subtotal.
struct RateEntry {
  std::int64_t count = 0;
  Rate row_share;
  Rate basis_share;
  bool significant = false;

  friend bool operator==(const RateEntry&, const RateEntry&) = default;
};

// All cells sharing one basis label (a predicted label or an actual label).
struct RateBlock {
  std::string basis_label;
  std::vector<RateEntry> entries;  // one per label of the other dimension
  RateEntry total;

  friend bool operator==(const RateBlock&, const RateBlock&) = default;
};

struct GroupRateRow {
  std::string group;
  std::vector<RateBlock> blocks;

  friend bool operator==(const GroupRateRow&, const GroupRateRow&) = default;
};

enum class RateBasis { kPrediction, kActual };

struct RateTable {
  RateBasis basis = RateBasis::kPrediction;
  std::vector<std::string> labels;
  std::vector<GroupRateRow> rows;

  friend bool operator==(const RateTable&, const RateTable&) = default;
};

struct GroupDerivedRates {
  std::string group;
  DerivedRates rates;
};

struct FairnessReport {
  std::string grouping;
  double alpha = 0.001;
  ContingencyMatrix observed;
  ChiSquaredTestResult test;
  ConfusionParityError parity;
  ResidualMatrix residuals;
  bool posthoc_after_nonsignificant_test = false;
  RateTable by_prediction;
  RateTable by_actual;
  std::vector<GroupDerivedRates> derived;
  std::vector<GroupSize> dropped_groups;
  std::vector<std::string> warnings;

  bool unfair() const { return test.unfair(); }
};

struct ComposeOptions {
  std::string grouping;
  std::vector<GroupSize> dropped_groups;
  std::vector<GroupSize> sparse_groups;
};

// Equal confusion test, then confusion parity error, then residual post hoc
// analysis. Residuals are always computed; a warning marks them when the
// omnibus test is not significant.
FairnessReport ComposeReport(const ContingencyMatrix& observed, double alpha,
                             const SignificancePolicy& policy, const ComposeOptions& options = {});

enum class ReportFormat { kStructured, kTable };

ReportFormat ReportFormatFromString(std::string_view text);

std::string Render(const FairnessReport& report, ReportFormat format);

// Inverse of Render(report, kStructured).
FairnessReport ParseStructuredReport(const std::string& text);

// "p < 0.001" below the display floor, "p = 0.042" otherwise.
std::string FormatPValue(double p);

}  // namespace eqfair
