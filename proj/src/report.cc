#include "eqfair/report.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "eqfair/error.h"
#include "json.hpp"

namespace eqfair {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kPDisplayFloor = 0.001;

Rate Share(std::int64_t part, std::int64_t whole) {
  if (whole == 0) return std::nullopt;
  return static_cast<double>(part) / static_cast<double>(whole);
}

// Maps full-matrix coordinates onto the pruned matrix the test ran on.
class PrunedIndex {
 public:
  PrunedIndex(const ContingencyMatrix& full, const ContingencyMatrix& pruned)
      : rows_(full.num_groups(), -1), cols_(full.num_cells(), -1) {
    for (std::size_t i = 0; i < full.num_groups(); ++i) {
      const auto& names = pruned.group_names();
      auto it = std::find(names.begin(), names.end(), full.group_names()[i]);
      if (it != names.end()) rows_[i] = it - names.begin();
    }
    for (std::size_t j = 0; j < full.num_cells(); ++j) {
      const auto& cells = pruned.outcome_cells();
      auto it = std::find(cells.begin(), cells.end(), full.outcome_cells()[j]);
      if (it != cells.end()) cols_[j] = it - cells.begin();
    }
  }

  bool Contains(std::size_t i, std::size_t j) const { return rows_[i] >= 0 && cols_[j] >= 0; }
  std::size_t Row(std::size_t i) const { return static_cast<std::size_t>(rows_[i]); }
  std::size_t Col(std::size_t j) const { return static_cast<std::size_t>(cols_[j]); }

 private:
  std::vector<std::ptrdiff_t> rows_;
  std::vector<std::ptrdiff_t> cols_;
};

RateTable BuildRateTable(const ContingencyMatrix& observed, const ResidualMatrix& residuals,
                         const PrunedIndex& index, RateBasis basis) {
  const auto& labels = observed.labels();
  const std::size_t k = labels.size();
  std::map<std::pair<std::string, std::string>, std::size_t> cell_index;
  for (std::size_t j = 0; j < observed.num_cells(); ++j) {
    cell_index[{observed.outcome_cells()[j].actual, observed.outcome_cells()[j].predicted}] = j;
  }

  RateTable table;
  table.basis = basis;
  table.labels = labels;
  const auto row_totals = observed.row_totals();
  for (std::size_t g = 0; g < observed.num_groups(); ++g) {
    const auto confusion = ConfusionMatrixOf(observed, g);
    GroupRateRow row;
    row.group = observed.group_names()[g];
    for (std::size_t outer = 0; outer < k; ++outer) {
      RateBlock block;
      block.basis_label = labels[outer];
      std::int64_t subtotal = 0;
      for (std::size_t inner = 0; inner < k; ++inner) {
        const std::size_t actual = basis == RateBasis::kPrediction ? inner : outer;
        const std::size_t predicted = basis == RateBasis::kPrediction ? outer : inner;
        subtotal += confusion(actual, predicted);
      }
      for (std::size_t inner = 0; inner < k; ++inner) {
        const std::size_t actual = basis == RateBasis::kPrediction ? inner : outer;
        const std::size_t predicted = basis == RateBasis::kPrediction ? outer : inner;
        RateEntry entry;
        entry.count = confusion(actual, predicted);
        entry.row_share = Share(entry.count, row_totals[g]);
        entry.basis_share = Share(entry.count, subtotal);
        auto it = cell_index.find({labels[actual], labels[predicted]});
        if (it != cell_index.end() && index.Contains(g, it->second)) {
          entry.significant = residuals.significant(index.Row(g), index.Col(it->second));
        }
        block.entries.push_back(entry);
      }
      block.total.count = subtotal;
      block.total.row_share = Share(subtotal, row_totals[g]);
      block.total.basis_share = Share(subtotal, subtotal);
      row.blocks.push_back(std::move(block));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string GroupList(const std::vector<GroupSize>& groups) {
  std::vector<std::string> parts;
  for (const auto& g : groups) parts.push_back(fmt::format("{} (n = {})", DisplayGroupName(g.name), g.size));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out;
}

// ---- structured output ---------------------------------------------------

Json RateJson(const Rate& r) { return r ? Json(*r) : Json(nullptr); }

Rate RateFromJson(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

template <typename T>
Json GridJson(const Grid<T>& grid) {
  auto rows = Json::array();
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    auto row = Json::array();
    for (std::size_t j = 0; j < grid.cols(); ++j) row.push_back(static_cast<T>(grid(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
Grid<T> GridFromJson(const Json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Grid<T> grid(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw DataError("ragged matrix in report");
    for (std::size_t k = 0; k < cols; ++k) grid(i, k) = j[i][k].get<T>();
  }
  return grid;
}

Json CellsJson(const std::vector<OutcomeCell>& cells) {
  auto out = Json::array();
  for (const auto& c : cells) out.push_back({{"actual", c.actual}, {"predicted", c.predicted}});
  return out;
}

std::vector<OutcomeCell> CellsFromJson(const Json& j) {
  std::vector<OutcomeCell> cells;
  for (const auto& c : j) cells.push_back({c.at("actual").get<std::string>(), c.at("predicted").get<std::string>()});
  return cells;
}

Json MatrixJson(const ContingencyMatrix& m) {
  Json out;
  out["group_names"] = m.group_names();
  out["labels"] = m.labels();
  out["outcome_cells"] = CellsJson(m.outcome_cells());
  out["counts"] = GridJson(m.counts());
  return out;
}

ContingencyMatrix MatrixFromJson(const Json& j) {
  return ContingencyMatrix(GridFromJson<std::int64_t>(j.at("counts")),
                           j.at("group_names").get<std::vector<std::string>>(),
                           j.at("labels").get<std::vector<std::string>>(),
                           CellsFromJson(j.at("outcome_cells")));
}

Json EntryJson(const RateEntry& e) {
  return {{"count", e.count},
          {"row_share", RateJson(e.row_share)},
          {"basis_share", RateJson(e.basis_share)},
          {"significant", e.significant}};
}

RateEntry EntryFromJson(const Json& j) {
  return {j.at("count").get<std::int64_t>(), RateFromJson(j.at("row_share")),
          RateFromJson(j.at("basis_share")), j.at("significant").get<bool>()};
}

Json RateTableJson(const RateTable& t) {
  Json out;
  out["basis"] = t.basis == RateBasis::kPrediction ? "prediction" : "actual";
  out["labels"] = t.labels;
  auto rows = Json::array();
  for (const auto& r : t.rows) {
    auto blocks = Json::array();
    for (const auto& b : r.blocks) {
      auto entries = Json::array();
      for (const auto& e : b.entries) entries.push_back(EntryJson(e));
      blocks.push_back({{"basis_label", b.basis_label}, {"entries", entries}, {"total", EntryJson(b.total)}});
    }
    rows.push_back({{"group", r.group}, {"blocks", blocks}});
  }
  out["rows"] = rows;
  return out;
}

RateTable RateTableFromJson(const Json& j) {
  RateTable t;
  t.basis = j.at("basis") == "prediction" ? RateBasis::kPrediction : RateBasis::kActual;
  t.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    GroupRateRow row;
    row.group = r.at("group").get<std::string>();
    for (const auto& b : r.at("blocks")) {
      RateBlock block;
      block.basis_label = b.at("basis_label").get<std::string>();
      for (const auto& e : b.at("entries")) block.entries.push_back(EntryFromJson(e));
      block.total = EntryFromJson(b.at("total"));
      row.blocks.push_back(std::move(block));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json DerivedJson(const GroupDerivedRates& d) {
  Json out;
  out["group"] = d.group;
  out["accuracy"] = RateJson(d.rates.accuracy);
  auto classes = Json::array();
  for (const auto& c : d.rates.per_class) {
    classes.push_back({{"label", c.label},
                       {"precision", RateJson(c.precision)},
                       {"recall", RateJson(c.recall)},
                       {"specificity", RateJson(c.specificity)}});
  }
  out["per_class"] = classes;
  if (d.rates.binary) {
    const auto& b = *d.rates.binary;
    out["binary"] = {{"precision", RateJson(b.precision)},
                     {"negative_predictive_value", RateJson(b.negative_predictive_value)},
                     {"recall", RateJson(b.recall)},
                     {"specificity", RateJson(b.specificity)}};
  } else {
    out["binary"] = nullptr;
  }
  return out;
}

GroupDerivedRates DerivedFromJson(const Json& j) {
  GroupDerivedRates d;
  d.group = j.at("group").get<std::string>();
  d.rates.accuracy = RateFromJson(j.at("accuracy"));
  for (const auto& c : j.at("per_class")) {
    d.rates.per_class.push_back({c.at("label").get<std::string>(), RateFromJson(c.at("precision")),
                                 RateFromJson(c.at("recall")), RateFromJson(c.at("specificity"))});
  }
  if (!j.at("binary").is_null()) {
    const auto& b = j.at("binary");
    d.rates.binary = BinaryRates{RateFromJson(b.at("precision")),
                                 RateFromJson(b.at("negative_predictive_value")),
                                 RateFromJson(b.at("recall")), RateFromJson(b.at("specificity"))};
  }
  return d;
}

std::string RenderStructured(const FairnessReport& r) {
  Json doc;
  doc["schema"] = kReportSchema;
  doc["grouping"] = r.grouping;
  doc["alpha"] = r.alpha;
  doc["verdict"] = r.unfair() ? "unfair" : "fair";
  doc["observed"] = MatrixJson(r.observed);

  Json test;
  test["statistic"] = r.test.statistic;
  test["dof"] = r.test.dof;
  test["p_value"] = r.test.p_value;
  test["alpha"] = r.test.alpha;
  test["observed"] = MatrixJson(r.test.observed);
  test["expected"] = GridJson(r.test.expected);
  test["pruned_columns"] = CellsJson(r.test.pruned_columns);
  test["pruned_groups"] = r.test.pruned_groups;
  test["cochran"] = {{"fraction_cells_expected_ge_5", r.test.cochran.fraction_cells_expected_ge_5},
                     {"min_expected", r.test.cochran.min_expected},
                     {"passes", r.test.cochran.passes}};
  doc["test"] = test;

  doc["parity"] = {{"phi", r.parity.phi},
                   {"strength", ToString(r.parity.strength)},
                   {"min_qr", r.parity.min_qr}};

  Json residuals;
  residuals["policy"] = r.residuals.policy.Name();
  residuals["policy_alpha"] = r.residuals.policy.alpha;
  residuals["critical_value"] = r.residuals.critical_value;
  residuals["values"] = GridJson(r.residuals.residuals);
  residuals["significant"] = GridJson(r.residuals.significant);
  doc["residuals"] = residuals;
  doc["posthoc_after_nonsignificant_test"] = r.posthoc_after_nonsignificant_test;

  auto derived = Json::array();
  for (const auto& d : r.derived) derived.push_back(DerivedJson(d));
  doc["rates"] = {{"by_prediction", RateTableJson(r.by_prediction)},
                  {"by_actual", RateTableJson(r.by_actual)},
                  {"derived", derived}};

  auto dropped = Json::array();
  for (const auto& g : r.dropped_groups) dropped.push_back({{"name", g.name}, {"size", g.size}});
  doc["dropped_groups"] = dropped;
  doc["warnings"] = r.warnings;
  return doc.dump(2) + "\n";
}

// ---- table text ------------------------------------------------------------

class TextTable {
 public:
  void AddRow(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void AddRule() { rows_.push_back({}); }

  std::string Render() const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
      if (widths.size() < row.size()) widths.resize(row.size(), 0);
      for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], Width(row[c]));
    }
    std::size_t total = 0;
    for (auto w : widths) total += w + 2;
    std::string out;
    for (const auto& row : rows_) {
      if (row.empty()) {
        out += std::string(total > 2 ? total - 2 : 0, '-') + "\n";
        continue;
      }
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const auto pad = std::string(widths[c] - Width(row[c]), ' ');
        line += c == 0 ? row[c] + pad : pad + row[c];
        if (c + 1 < row.size()) line += "  ";
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
    return out;
  }

 private:
  // Display width, counting UTF-8 code points.
  static std::size_t Width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
  }

  std::vector<std::vector<std::string>> rows_;
};

std::string FormatResidual(double r, bool significant) {
  auto text = fmt::format("{:.1f}", r);
  if (text == "-0.0") text = "0.0";
  return significant ? "*" + text + "*" : text;
}

std::string FormatPercent(const Rate& r) {
  if (!r) return "n/a";
  return fmt::format("{:.0f}%", *r * 100.0);
}

std::string FormatEntry(const RateEntry& e) {
  auto text = fmt::format("{} ({})", FormatPercent(e.row_share), FormatPercent(e.basis_share));
  return e.significant ? "*" + text + "*" : text;
}

std::string RenderRateTable(const RateTable& t) {
  const bool by_prediction = t.basis == RateBasis::kPrediction;
  TextTable table;
  std::vector<std::string> outer{by_prediction ? "Predicted" : "Actual"};
  std::vector<std::string> inner{by_prediction ? "Actual" : "Predicted"};
  for (const auto& label : t.labels) {
    for (std::size_t i = 0; i <= t.labels.size(); ++i) {
      outer.push_back(i == 0 ? label : "");
      inner.push_back(i < t.labels.size() ? t.labels[i] : "Total");
    }
  }
  table.AddRow(outer);
  table.AddRow(inner);
  table.AddRule();
  for (const auto& row : t.rows) {
    std::vector<std::string> cells{DisplayGroupName(row.group)};
    for (const auto& block : row.blocks) {
      for (const auto& e : block.entries) cells.push_back(FormatEntry(e));
      cells.push_back(FormatEntry(block.total));
    }
    table.AddRow(cells);
  }
  return table.Render();
}

std::string FormatRate(const Rate& r) { return r ? fmt::format("{:.2f}", *r) : "n/a"; }

std::string RenderTable(const FairnessReport& r) {
  std::string out;
  const auto title = fmt::format("Equal confusion audit: {}", r.grouping.empty() ? "groups" : r.grouping);
  out += title + "\n" + std::string(title.size(), '=') + "\n";
  out += fmt::format("Groups: {}  Outcome cells: {}  n = {}\n", r.observed.num_groups(),
                     r.observed.num_cells(), r.observed.total());
  out += fmt::format("Verdict: {} at alpha = {} (chi-squared = {:.2f}, dof = {}, {})\n",
                     r.unfair() ? "UNFAIR" : "no evidence of unfairness", r.alpha, r.test.statistic,
                     r.test.dof, FormatPValue(r.test.p_value));
  out += fmt::format("Confusion parity error: phi = {:.2f} ({}, min(q, r) = {})\n", r.parity.phi,
                     ToString(r.parity.strength), r.parity.min_qr);
  out += fmt::format("Post hoc: {} policy, alpha = {}, critical |R| > {:.2f}; {} significant cell(s)\n\n",
                     r.residuals.policy.Name(), r.residuals.policy.alpha, r.residuals.critical_value,
                     r.residuals.significant_count());

  const PrunedIndex index(r.observed, r.test.observed);
  out += "Observed (O), expected (E) and adjusted standardized residual (R); *R* is significant\n";
  TextTable contingency;
  std::vector<std::string> actual_row{"Actual"}, predicted_row{"Predicted"}, oer_row{"O/E/R"};
  for (const auto& cell : r.observed.outcome_cells()) {
    actual_row.insert(actual_row.end(), {cell.actual, "", ""});
    predicted_row.insert(predicted_row.end(), {cell.predicted, "", ""});
    oer_row.insert(oer_row.end(), {"O", "E", "R"});
  }
  contingency.AddRow(actual_row);
  contingency.AddRow(predicted_row);
  contingency.AddRow(oer_row);
  contingency.AddRule();
  for (std::size_t i = 0; i < r.observed.num_groups(); ++i) {
    std::vector<std::string> row{DisplayGroupName(r.observed.group_names()[i])};
    for (std::size_t j = 0; j < r.observed.num_cells(); ++j) {
      row.push_back(std::to_string(r.observed.counts()(i, j)));
      if (index.Contains(i, j)) {
        const auto pi = index.Row(i), pj = index.Col(j);
        row.push_back(fmt::format("{:.0f}", r.test.expected(pi, pj)));
        row.push_back(FormatResidual(r.residuals.residuals(pi, pj), r.residuals.significant(pi, pj)));
      } else {
        row.insert(row.end(), {"-", "-"});
      }
    }
    contingency.AddRow(row);
  }
  out += contingency.Render() + "\n";

  out += "Predictions as the basis: share of group total (share of predicted-label subtotal)\n";
  out += RenderRateTable(r.by_prediction) + "\n";
  out += "Actual values as the basis: share of group total (share of actual-label subtotal)\n";
  out += RenderRateTable(r.by_actual) + "\n";

  out += "Derived rates\n";
  TextTable derived;
  const bool binary = !r.derived.empty() && r.derived.front().rates.binary.has_value();
  if (binary) {
    derived.AddRow({"Group", "Accuracy", "Precision", "NPV", "Recall", "Specificity"});
    derived.AddRule();
    for (const auto& d : r.derived) {
      const auto& b = *d.rates.binary;
      derived.AddRow({DisplayGroupName(d.group), FormatRate(d.rates.accuracy), FormatRate(b.precision),
                      FormatRate(b.negative_predictive_value), FormatRate(b.recall), FormatRate(b.specificity)});
    }
  } else {
    derived.AddRow({"Group", "Class", "Accuracy", "Precision", "Recall", "Specificity"});
    derived.AddRule();
    for (const auto& d : r.derived) {
      for (const auto& c : d.rates.per_class) {
        derived.AddRow({DisplayGroupName(d.group), c.label, FormatRate(d.rates.accuracy),
                        FormatRate(c.precision), FormatRate(c.recall), FormatRate(c.specificity)});
      }
    }
  }
  out += derived.Render();

  if (!r.warnings.empty()) {
    out += "\nWarnings\n";
    for (const auto& w : r.warnings) out += "  - " + w + "\n";
  }
  return out;
}

}  // namespace

std::string FormatPValue(double p) {
  if (p < kPDisplayFloor) return "p < 0.001";
  return fmt::format("p = {:.3f}", p);
}

ReportFormat ReportFormatFromString(std::string_view text) {
  if (text == "structured" || text == "json") return ReportFormat::kStructured;
  if (text == "table" || text == "table-text" || text == "text") return ReportFormat::kTable;
  throw InvalidInput(fmt::format("unknown report format '{}' (expected structured|table)", text));
}

FairnessReport ComposeReport(const ContingencyMatrix& observed, double alpha,
                             const SignificancePolicy& policy, const ComposeOptions& options) {
  auto test = EqualConfusionTest(observed, alpha);
  const auto parity = ComputeConfusionParityError(test);
  auto residuals = AdjustedResiduals(test.observed, test.expected, policy);

  const PrunedIndex index(observed, test.observed);
  auto by_prediction = BuildRateTable(observed, residuals, index, RateBasis::kPrediction);
  auto by_actual = BuildRateTable(observed, residuals, index, RateBasis::kActual);
  std::vector<GroupDerivedRates> derived;
  for (std::size_t g = 0; g < observed.num_groups(); ++g) {
    derived.push_back({observed.group_names()[g], ComputeDerivedRates(ConfusionMatrixOf(observed, g), observed.labels())});
  }

  std::vector<std::string> warnings;
  const bool nonsignificant = !test.unfair();
  if (nonsignificant) {
    warnings.push_back(fmt::format(
        "post hoc residuals follow a non-significant omnibus test ({} >= alpha = {}); "
        "treat significant cells as exploratory",
        FormatPValue(test.p_value), alpha));
  }
  if (!test.cochran.passes) {
    warnings.push_back(fmt::format(
        "Cochran's rule not met: {:.0f}% of cells have expected count >= 5 (need 80%), "
        "minimum expected count {:.2f} (need 1); the chi-squared approximation may be unreliable",
        test.cochran.fraction_cells_expected_ge_5 * 100.0, test.cochran.min_expected));
  }
  for (const auto& c : test.pruned_columns) {
    warnings.push_back(fmt::format(
        "outcome cell (actual {}, predicted {}) is empty for every group and was excluded from the test",
        c.actual, c.predicted));
  }
  for (const auto& g : test.pruned_groups) {
    warnings.push_back(fmt::format("group '{}' has no observations and was excluded from the test",
                                   DisplayGroupName(g)));
  }
  if (!options.dropped_groups.empty()) {
    warnings.push_back("groups dropped below the minimum group size: " + GroupList(options.dropped_groups));
  }
  if (!options.sparse_groups.empty()) {
    warnings.push_back("groups below the minimum group size (kept): " + GroupList(options.sparse_groups));
  }

  return FairnessReport{options.grouping,
                        alpha,
                        observed,
                        std::move(test),
                        parity,
                        std::move(residuals),
                        nonsignificant,
                        std::move(by_prediction),
                        std::move(by_actual),
                        std::move(derived),
                        options.dropped_groups,
                        std::move(warnings)};
}

std::string Render(const FairnessReport& report, ReportFormat format) {
  return format == ReportFormat::kStructured ? RenderStructured(report) : RenderTable(report);
}

FairnessReport ParseStructuredReport(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
    if (doc.at("schema") != kReportSchema) {
      throw DataError(fmt::format("unsupported report schema '{}'", doc.at("schema").dump()));
    }
    const auto& t = doc.at("test");
    const auto& c = t.at("cochran");
    ChiSquaredTestResult test{t.at("statistic").get<double>(),
                              t.at("dof").get<int>(),
                              t.at("p_value").get<double>(),
                              t.at("alpha").get<double>(),
                              MatrixFromJson(t.at("observed")),
                              GridFromJson<double>(t.at("expected")),
                              CellsFromJson(t.at("pruned_columns")),
                              t.at("pruned_groups").get<std::vector<std::string>>(),
                              {c.at("fraction_cells_expected_ge_5").get<double>(),
                               c.at("min_expected").get<double>(), c.at("passes").get<bool>()}};
    const auto& p = doc.at("parity");
    ConfusionParityError parity{p.at("phi").get<double>(),
                                EffectStrengthFromString(p.at("strength").get<std::string>()),
                                p.at("min_qr").get<int>()};
    const auto& r = doc.at("residuals");
    ResidualMatrix residuals{GridFromJson<double>(r.at("values")),
                             {PolicyKindFromString(r.at("policy").get<std::string>()),
                              r.at("policy_alpha").get<double>()},
                             r.at("critical_value").get<double>(),
                             GridFromJson<bool>(r.at("significant"))};
    const auto& rates = doc.at("rates");
    std::vector<GroupDerivedRates> derived;
    for (const auto& d : rates.at("derived")) derived.push_back(DerivedFromJson(d));
    std::vector<GroupSize> dropped;
    for (const auto& g : doc.at("dropped_groups")) {
      dropped.push_back({g.at("name").get<std::string>(), g.at("size").get<std::int64_t>()});
    }
    return FairnessReport{doc.at("grouping").get<std::string>(),
                          doc.at("alpha").get<double>(),
                          MatrixFromJson(doc.at("observed")),
                          std::move(test),
                          parity,
                          std::move(residuals),
                          doc.at("posthoc_after_nonsignificant_test").get<bool>(),
                          RateTableFromJson(rates.at("by_prediction")),
                          RateTableFromJson(rates.at("by_actual")),
                          std::move(derived),
                          std::move(dropped),
                          doc.at("warnings").get<std::vector<std::string>>()};
  } catch (const Json::exception& e) {
    throw DataError(fmt::format("malformed report: {}", e.what()));
  }
}

}  // namespace eqfair
