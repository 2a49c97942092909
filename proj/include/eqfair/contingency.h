#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqfair/grid.h"

namespace eqfair {

// One decision record. group_key holds one value per sensitive attribute.
struct LabeledSample {
  std::vector<std::string> group_key;
  std::string predicted;
  std::string actual;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// An (actual, predicted) pair; one cell of a confusion matrix.
struct OutcomeCell {
  std::string actual;
  std::string predicted;

  friend bool operator==(const OutcomeCell&, const OutcomeCell&) = default;
};

using CountGrid = Grid<std::int64_t>;

// Confusion matrix indexed as (actual, predicted) in label order.
using ConfusionGrid = Grid<std::int64_t>;

// Separator used when a multi-attribute group key is collapsed into a single
// group name. It cannot occur in ingested values.
inline constexpr char kGroupSeparator = '\x1f';

std::string JoinGroupKey(std::span<const std::string> key);

// Human readable form of a group name: separators rendered as " × ".
std::string DisplayGroupName(const std::string& name);

// The outcome cells for a label alphabet in canonical order: actual-major,
// predicted-minor, labels in the given order.
std::vector<OutcomeCell> CanonicalCells(std::span<const std::string> labels);

// Groups × outcome-cells table of counts. Rows are flattened per-group
// confusion matrices. Immutable once constructed.
class ContingencyMatrix {
 public:
  // Validates q >= 2, r >= 2, non-negative counts, unique group names and
  // cells. `labels` is the label alphabet; every cell must draw from it.
  ContingencyMatrix(CountGrid counts, std::vector<std::string> group_names,
                    std::vector<std::string> labels,
                    std::vector<OutcomeCell> outcome_cells);

  // Full k*k layout over `labels` in canonical order.
  static ContingencyMatrix WithCanonicalCells(CountGrid counts,
                                              std::vector<std::string> group_names,
                                              std::vector<std::string> labels);

  const CountGrid& counts() const { return counts_; }
  const std::vector<std::string>& group_names() const { return group_names_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<OutcomeCell>& outcome_cells() const { return cells_; }

  std::size_t num_groups() const { return counts_.rows(); }
  std::size_t num_cells() const { return counts_.cols(); }
  std::int64_t total() const { return total_; }

  std::vector<std::int64_t> row_totals() const;
  std::vector<std::int64_t> column_totals() const;

  // True when every label pair is present in canonical order.
  bool has_canonical_layout() const;

  friend bool operator==(const ContingencyMatrix&, const ContingencyMatrix&) = default;

 private:
  CountGrid counts_;
  std::vector<std::string> group_names_;
  std::vector<std::string> labels_;
  std::vector<OutcomeCell> cells_;
  std::int64_t total_ = 0;
};

// Tallies samples into a contingency matrix. Groups default to first
// appearance order and labels to lexicographic order. Every k*k outcome
// column is kept, including all-zero ones.
ContingencyMatrix BuildContingency(
    std::span<const LabeledSample> samples,
    const std::optional<std::vector<std::string>>& label_order = std::nullopt,
    const std::optional<std::vector<std::string>>& group_order = std::nullopt);

// Inverse of the row flattening for one group. Cells absent from the
// matrix's layout are reported as zero.
ConfusionGrid ConfusionMatrixOf(const ContingencyMatrix& contingency,
                                std::size_t group_index);

// A rate whose denominator may be zero; nullopt marks "undefined".
using Rate = std::optional<double>;

struct ClassRates {
  std::string label;
  Rate precision;
  Rate recall;
  Rate specificity;
};

// Binary statistics with the first label as the positive class.
struct BinaryRates {
  Rate precision;
  Rate negative_predictive_value;
  Rate recall;
  Rate specificity;
};

struct DerivedRates {
  Rate accuracy;
  std::vector<ClassRates> per_class;  // one-vs-rest
  std::optional<BinaryRates> binary;  // set only when k == 2
};

DerivedRates ComputeDerivedRates(const ConfusionGrid& confusion,
                                 std::span<const std::string> labels = {});

}  // namespace eqfair
