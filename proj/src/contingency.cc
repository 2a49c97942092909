#include "eqfair/contingency.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "eqfair/error.h"

namespace eqfair {

std::string JoinGroupKey(std::span<const std::string> key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += kGroupSeparator;
    out += key[i];
  }
  return out;
}

std::string DisplayGroupName(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == kGroupSeparator) {
      out += " × ";
    } else {
      out += c;
    }
  }
  return out;
}

std::vector<OutcomeCell> CanonicalCells(std::span<const std::string> labels) {
  std::vector<OutcomeCell> cells;
  cells.reserve(labels.size() * labels.size());
  for (const auto& actual : labels) {
    for (const auto& predicted : labels) cells.push_back({actual, predicted});
  }
  return cells;
}

ContingencyMatrix::ContingencyMatrix(CountGrid counts, std::vector<std::string> group_names,
                                     std::vector<std::string> labels,
                                     std::vector<OutcomeCell> outcome_cells)
    : counts_(std::move(counts)),
      group_names_(std::move(group_names)),
      labels_(std::move(labels)),
      cells_(std::move(outcome_cells)) {
  if (counts_.rows() < 2) {
    throw InvalidInput(fmt::format("contingency matrix needs at least 2 groups, got {}",
                                   counts_.rows()));
  }
  if (counts_.cols() < 2) {
    throw InvalidInput(fmt::format("contingency matrix needs at least 2 outcome cells, got {}",
                                   counts_.cols()));
  }
  if (group_names_.size() != counts_.rows()) {
    throw InvalidInput(fmt::format("{} group names for {} rows", group_names_.size(),
                                   counts_.rows()));
  }
  if (cells_.size() != counts_.cols()) {
    throw InvalidInput(
        fmt::format("{} outcome cells for {} columns", cells_.size(), counts_.cols()));
  }
  std::set<std::string> seen_groups;
  for (const auto& g : group_names_) {
    if (g.empty()) throw InvalidInput("empty group name");
    if (!seen_groups.insert(g).second) {
      throw InvalidInput(fmt::format("duplicate group name '{}'", DisplayGroupName(g)));
    }
  }
  std::set<std::string> label_set(labels_.begin(), labels_.end());
  if (label_set.size() != labels_.size()) throw InvalidInput("duplicate label");
  std::set<std::pair<std::string, std::string>> seen_cells;
  for (const auto& c : cells_) {
    if (!label_set.count(c.actual) || !label_set.count(c.predicted)) {
      throw InvalidInput(fmt::format("outcome cell ({}, {}) uses an undeclared label", c.actual,
                                     c.predicted));
    }
    if (!seen_cells.insert({c.actual, c.predicted}).second) {
      throw InvalidInput(fmt::format("duplicate outcome cell ({}, {})", c.actual, c.predicted));
    }
  }
  for (std::size_t i = 0; i < counts_.rows(); ++i) {
    for (std::size_t j = 0; j < counts_.cols(); ++j) {
      const auto v = counts_(i, j);
      if (v < 0) {
        throw InvalidInput(fmt::format("negative count {} at group '{}', cell {}", v,
                                       DisplayGroupName(group_names_[i]), j));
      }
      total_ += v;
    }
  }
}

ContingencyMatrix ContingencyMatrix::WithCanonicalCells(CountGrid counts,
                                                        std::vector<std::string> group_names,
                                                        std::vector<std::string> labels) {
  auto cells = CanonicalCells(labels);
  return ContingencyMatrix(std::move(counts), std::move(group_names), std::move(labels),
                           std::move(cells));
}

std::vector<std::int64_t> ContingencyMatrix::row_totals() const {
  std::vector<std::int64_t> totals(counts_.rows(), 0);
  for (std::size_t i = 0; i < counts_.rows(); ++i) {
    for (std::size_t j = 0; j < counts_.cols(); ++j) totals[i] += counts_(i, j);
  }
  return totals;
}

std::vector<std::int64_t> ContingencyMatrix::column_totals() const {
  std::vector<std::int64_t> totals(counts_.cols(), 0);
  for (std::size_t i = 0; i < counts_.rows(); ++i) {
    for (std::size_t j = 0; j < counts_.cols(); ++j) totals[j] += counts_(i, j);
  }
  return totals;
}

bool ContingencyMatrix::has_canonical_layout() const {
  return cells_ == CanonicalCells(labels_);
}

ContingencyMatrix BuildContingency(std::span<const LabeledSample> samples,
                                   const std::optional<std::vector<std::string>>& label_order,
                                   const std::optional<std::vector<std::string>>& group_order) {
  if (samples.empty()) throw InvalidInput("cannot build a contingency matrix from no samples");

  const std::size_t arity = samples.front().group_key.size();
  std::vector<std::string> groups;
  std::unordered_map<std::string, std::size_t> group_index;
  std::set<std::string> observed_labels;

  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& sample = samples[s];
    if (sample.group_key.size() != arity || arity == 0) {
      throw InvalidInput(fmt::format("sample {} has group key arity {}, expected {}", s,
                                     sample.group_key.size(), arity));
    }
    for (const auto& v : sample.group_key) {
      if (v.empty()) throw InvalidInput(fmt::format("sample {} has an empty group value", s));
    }
    auto name = JoinGroupKey(sample.group_key);
    if (group_index.emplace(name, groups.size()).second) groups.push_back(std::move(name));
    observed_labels.insert(sample.predicted);
    observed_labels.insert(sample.actual);
  }

  std::vector<std::string> labels;
  if (label_order) {
    labels = *label_order;
    std::set<std::string> declared(labels.begin(), labels.end());
    for (const auto& l : observed_labels) {
      if (!declared.count(l)) {
        throw InvalidInput(fmt::format("label '{}' is observed but missing from label order", l));
      }
    }
  } else {
    labels.assign(observed_labels.begin(), observed_labels.end());
  }

  if (group_order) {
    std::unordered_map<std::string, std::size_t> reordered;
    for (std::size_t i = 0; i < group_order->size(); ++i) {
      if (!reordered.emplace((*group_order)[i], i).second) {
        throw InvalidInput(fmt::format("duplicate group '{}' in group order", (*group_order)[i]));
      }
    }
    for (const auto& g : groups) {
      if (!reordered.count(g)) {
        throw InvalidInput(
            fmt::format("group '{}' is observed but missing from group order", DisplayGroupName(g)));
      }
    }
    groups = *group_order;
    group_index = std::move(reordered);
  }

  std::unordered_map<std::string, std::size_t> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i) label_index.emplace(labels[i], i);
  const std::size_t k = labels.size();

  CountGrid counts(groups.size(), k * k, 0);
  for (const auto& sample : samples) {
    const auto row = group_index.at(JoinGroupKey(sample.group_key));
    const auto col = label_index.at(sample.actual) * k + label_index.at(sample.predicted);
    ++counts(row, col);
  }
  return ContingencyMatrix::WithCanonicalCells(std::move(counts), std::move(groups),
                                               std::move(labels));
}

ConfusionGrid ConfusionMatrixOf(const ContingencyMatrix& contingency, std::size_t group_index) {
  if (group_index >= contingency.num_groups()) {
    throw InvalidInput(fmt::format("group index {} out of range [0, {})", group_index,
                                   contingency.num_groups()));
  }
  const auto& labels = contingency.labels();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);

  ConfusionGrid confusion(labels.size(), labels.size(), 0);
  const auto& cells = contingency.outcome_cells();
  for (std::size_t j = 0; j < cells.size(); ++j) {
    confusion(index.at(cells[j].actual), index.at(cells[j].predicted)) =
        contingency.counts()(group_index, j);
  }
  return confusion;
}

namespace {

Rate Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

DerivedRates ComputeDerivedRates(const ConfusionGrid& confusion,
                                 std::span<const std::string> labels) {
  const std::size_t k = confusion.rows();
  if (k < 2 || confusion.cols() != k) {
    throw InvalidInput(fmt::format("confusion matrix must be square with k >= 2, got {}x{}",
                                   confusion.rows(), confusion.cols()));
  }
  if (!labels.empty() && labels.size() != k) {
    throw InvalidInput(fmt::format("{} labels for a {}x{} confusion matrix", labels.size(), k, k));
  }

  std::vector<std::int64_t> actual_totals(k, 0), predicted_totals(k, 0);
  std::int64_t total = 0, correct = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t p = 0; p < k; ++p) {
      actual_totals[a] += confusion(a, p);
      predicted_totals[p] += confusion(a, p);
      total += confusion(a, p);
    }
    correct += confusion(a, a);
  }

  DerivedRates rates;
  rates.accuracy = Ratio(correct, total);
  for (std::size_t c = 0; c < k; ++c) {
    const auto tp = confusion(c, c);
    const auto negatives = total - actual_totals[c];
    const auto fp = predicted_totals[c] - tp;
    ClassRates cls;
    cls.label = labels.empty() ? std::to_string(c) : labels[c];
    cls.precision = Ratio(tp, predicted_totals[c]);
    cls.recall = Ratio(tp, actual_totals[c]);
    cls.specificity = Ratio(negatives - fp, negatives);
    rates.per_class.push_back(std::move(cls));
  }
  if (k == 2) {
    const auto tp = confusion(0, 0), fn = confusion(0, 1);
    const auto fp = confusion(1, 0), tn = confusion(1, 1);
    rates.binary = BinaryRates{Ratio(tp, tp + fp), Ratio(tn, tn + fn), Ratio(tp, tp + fn),
                               Ratio(tn, tn + fp)};
  }
  return rates;
}

}  // namespace eqfair
