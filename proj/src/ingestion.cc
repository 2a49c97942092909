#include "eqfair/ingestion.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "eqfair/error.h"
#include "json.hpp"

namespace eqfair {
namespace {

using nlohmann::json;

std::optional<std::int64_t> ParseInteger(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string MapLabel(const std::string& value, const std::optional<std::set<std::string>>& positive) {
  if (!positive) return value;
  return positive->count(value) ? kPositiveLabel : kNegativeLabel;
}

}  // namespace

MissingPolicy MissingPolicyFromString(std::string_view text) {
  if (text == "drop_row" || text == "drop") return MissingPolicy::kDropRow;
  if (text == "fail") return MissingPolicy::kFail;
  throw InvalidInput(fmt::format("unknown missing-value policy '{}' (expected drop_row|fail)", text));
}

std::map<std::string, std::int64_t> IngestReport::DropsByReason() const {
  std::map<std::string, std::int64_t> out;
  for (const auto& d : drops) ++out[d.reason];
  return out;
}

LoadedSamples SamplesFromTable(const CsvTable& table, const DatasetConfig& config) {
  if (config.attribute_columns.empty()) throw InvalidInput("no attribute columns configured");
  std::vector<std::string> named = config.attribute_columns;
  named.push_back(config.predicted_column);
  named.push_back(config.actual_column);
  std::vector<std::string> sorted = named;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("attribute, predicted and actual columns must be distinct");
  }
  std::vector<std::size_t> index;
  for (const auto& name : named) index.push_back(table.ColumnIndex(name));

  LoadedSamples out;
  out.data.attribute_names = config.attribute_columns;
  const std::size_t num_attributes = config.attribute_columns.size();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    ++out.report.rows_read;
    const auto& row = table.rows[r];
    std::vector<std::string> values;
    std::string missing;
    for (std::size_t c = 0; c < index.size(); ++c) {
      values.emplace_back(Trim(row[index[c]]));
      if (values.back().empty() && missing.empty()) missing = named[c];
    }
    if (!missing.empty()) {
      if (config.missing_policy == MissingPolicy::kFail) {
        throw DataError(fmt::format("{}: row {}: missing value in column '{}'",
                                    config.path.string(), r + 1, missing));
      }
      out.report.drops.push_back({r + 1, fmt::format("missing value in column '{}'", missing)});
      continue;
    }
    LabeledSample sample;
    sample.group_key.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(num_attributes));
    sample.predicted = MapLabel(values[num_attributes], config.positive_labels);
    sample.actual = MapLabel(values[num_attributes + 1], config.positive_labels);
    out.data.samples.push_back(std::move(sample));
    ++out.report.samples_emitted;
  }
  return out;
}

LoadedSamples LoadSamples(const DatasetConfig& config) {
  const auto table = ReadCsv(config.path);
  try {
    return SamplesFromTable(table, config);
  } catch (const DataError& e) {
    const std::string what = e.what();
    if (what.rfind(config.path.string(), 0) == 0) throw;
    throw DataError(fmt::format("{}: {}", config.path.string(), what));
  }
}

void WriteSamples(const std::filesystem::path& path, const SampleSet& data,
                  const std::string& predicted_column, const std::string& actual_column) {
  CsvTable table;
  table.header = data.attribute_names;
  table.header.push_back(predicted_column);
  table.header.push_back(actual_column);
  for (const auto& s : data.samples) {
    auto row = s.group_key;
    row.push_back(s.predicted);
    row.push_back(s.actual);
    table.rows.push_back(std::move(row));
  }
  WriteCsv(path, table);
}

void CompasAdapterConfig::Validate() const {
  if (screening_window_days <= 0) {
    throw InvalidInput(fmt::format("screening window must be > 0 days, got {}", screening_window_days));
  }
  if (score_positive_threshold < 1 || score_positive_threshold > 10) {
    throw InvalidInput(
        fmt::format("score threshold must lie in [1, 10], got {}", score_positive_threshold));
  }
  if (attribute_columns.empty()) throw InvalidInput("no attribute columns configured");
}

CompasSamples CompasFilter(const CsvTable& rows, const CompasAdapterConfig& config) {
  config.Validate();

  const auto screening = rows.ColumnIndex(config.screening_days_column);
  const auto assessment = rows.ColumnIndex(config.assessment_column);
  std::optional<std::size_t> score_text;
  if (!config.score_text_column.empty()) score_text = rows.ColumnIndex(config.score_text_column);
  std::optional<std::size_t> days_outside;
  if (!config.days_outside_column.empty()) days_outside = rows.ColumnIndex(config.days_outside_column);
  std::vector<std::pair<std::size_t, std::string>> exclusions;
  for (const auto& [column, value] : config.extra_exclusions) {
    // An exclusion on a column the file lacks cannot match anything.
    if (rows.HasColumn(column)) exclusions.emplace_back(rows.ColumnIndex(column), value);
  }
  const auto score = rows.ColumnIndex(config.score_column);
  const auto outcome = rows.ColumnIndex(config.outcome_column);
  std::vector<std::size_t> attributes;
  for (const auto& a : config.attribute_columns) attributes.push_back(rows.ColumnIndex(a));

  std::unordered_map<std::string, int> id_counts;
  std::optional<std::size_t> case_id;
  if (!config.case_id_column.empty()) {
    case_id = rows.ColumnIndex(config.case_id_column);
    for (const auto& row : rows.rows) ++id_counts[std::string(Trim(row[*case_id]))];
  }

  const std::vector<std::string> rule_names = {
      "assessment missing",  "outside screening window", "less than two years outside",
      "excluded value",      "multiple assessments",     "missing value",
      "unparseable score"};
  std::vector<std::int64_t> removed(rule_names.size(), 0);

  CompasSamples out;
  out.data.attribute_names = config.attribute_columns;
  auto field = [](const std::vector<std::string>& row, std::size_t c) {
    return std::string(Trim(row[c]));
  };

  for (std::size_t r = 0; r < rows.rows.size(); ++r) {
    const auto& row = rows.rows[r];
    ++out.report.rows_read;
    auto drop = [&](std::size_t rule, std::string detail = {}) {
      ++removed[rule];
      out.report.drops.push_back(
          {r + 1, detail.empty() ? rule_names[rule] : fmt::format("{}: {}", rule_names[rule], detail)});
    };

    const auto assessment_value = field(row, assessment);
    if (assessment_value.empty() || config.assessment_missing_values.count(assessment_value) ||
        (score_text && config.score_text_missing_values.count(field(row, *score_text)))) {
      drop(0);
      continue;
    }
    const auto days = ParseInteger(row[screening]);
    if (!days) {
      drop(1, "no screening offset");
      continue;
    }
    const auto offset = *days < 0 ? -*days : *days;
    const bool in_window = config.window_inclusive ? offset <= config.screening_window_days
                                                   : offset < config.screening_window_days;
    if (!in_window) {
      drop(1);
      continue;
    }
    if (days_outside) {
      const auto outside = ParseInteger(row[*days_outside]);
      if (!outside || *outside < config.min_days_outside) {
        drop(2);
        continue;
      }
    }
    bool excluded = false;
    for (const auto& [column, value] : exclusions) {
      if (field(row, column) == value) {
        drop(3, fmt::format("{} = {}", rows.header[column], value));
        excluded = true;
        break;
      }
    }
    if (excluded) continue;
    if (case_id && id_counts[field(row, *case_id)] > 1) {
      drop(4);
      continue;
    }

    std::vector<std::string> key;
    std::string missing;
    for (std::size_t i = 0; i < attributes.size(); ++i) {
      key.push_back(field(row, attributes[i]));
      if (key.back().empty() && missing.empty()) missing = config.attribute_columns[i];
    }
    const auto outcome_value = field(row, outcome);
    if (outcome_value.empty() && missing.empty()) missing = config.outcome_column;
    if (!missing.empty()) {
      if (config.missing_policy == MissingPolicy::kFail) {
        throw DataError(fmt::format("row {}: missing value in column '{}'", r + 1, missing));
      }
      drop(5, missing);
      continue;
    }
    const auto score_value = ParseInteger(row[score]);
    if (!score_value || *score_value < 1 || *score_value > 10) {
      if (config.missing_policy == MissingPolicy::kFail) {
        throw DataError(fmt::format("row {}: unparseable score '{}' in column '{}'", r + 1,
                                    field(row, score), config.score_column));
      }
      drop(6, field(row, score));
      continue;
    }

    LabeledSample sample;
    sample.group_key = std::move(key);
    sample.predicted = *score_value >= config.score_positive_threshold ? kPositiveLabel : kNegativeLabel;
    sample.actual = config.outcome_positive_values.count(outcome_value) ? kPositiveLabel : kNegativeLabel;
    out.data.samples.push_back(std::move(sample));
  }

  out.report.survivors = static_cast<std::int64_t>(out.data.samples.size());
  for (std::size_t i = 0; i < rule_names.size(); ++i) out.report.removed.emplace_back(rule_names[i], removed[i]);
  return out;
}

ContingencyMatrix ParseContingency(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(fmt::format("{}: not valid JSON: {}", origin, e.what()));
  }
  auto fail = [&](const std::string& where, const std::string& what) -> DataError {
    return DataError(fmt::format("{}: {}: {}", origin, where, what));
  };
  if (!doc.is_object()) throw fail("/", "expected an object");
  for (const char* key : {"group_names", "labels", "counts"}) {
    if (!doc.contains(key)) throw fail(fmt::format("/{}", key), "missing field");
    if (!doc[key].is_array()) throw fail(fmt::format("/{}", key), "expected an array");
  }
  if (doc.contains("column_order") &&
      (!doc["column_order"].is_string() || doc["column_order"] != "actual-major")) {
    throw fail("/column_order", "only \"actual-major\" is supported");
  }
  auto strings = [&](const char* key) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < doc[key].size(); ++i) {
      const auto& v = doc[key][i];
      if (!v.is_string() || v.get<std::string>().empty()) {
        throw fail(fmt::format("/{}/{}", key, i), "expected a non-empty string");
      }
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  auto groups = strings("group_names");
  auto labels = strings("labels");
  const auto& counts = doc["counts"];
  const std::size_t width = labels.size() * labels.size();
  if (counts.size() != groups.size()) {
    throw fail("/counts", fmt::format("{} rows for {} groups", counts.size(), groups.size()));
  }
  CountGrid grid(groups.size(), width, 0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto& row = counts[i];
    if (!row.is_array() || row.size() != width) {
      throw fail(fmt::format("/counts/{}", i),
                 fmt::format("expected {} entries (labels squared)", width));
    }
    for (std::size_t j = 0; j < width; ++j) {
      const auto& v = row[j];
      if (!v.is_number_integer()) throw fail(fmt::format("/counts/{}/{}", i, j), "expected an integer");
      if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(INT64_MAX)) throw fail(fmt::format("/counts/{}/{}", i, j), "count too large");
        grid(i, j) = static_cast<std::int64_t>(u);
      } else {
        grid(i, j) = v.get<std::int64_t>();
      }
      if (grid(i, j) < 0) throw fail(fmt::format("/counts/{}/{}", i, j), "negative count");
    }
  }
  try {
    auto matrix = ContingencyMatrix::WithCanonicalCells(std::move(grid), std::move(groups), std::move(labels));
    if (matrix.total() == 0) throw fail("/counts", "all counts are zero");
    return matrix;
  } catch (const InvalidInput& e) {
    throw fail("/", e.what());
  }
}

ContingencyMatrix LoadContingency(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseContingency(buffer.str(), path.string());
}

std::string FormatContingency(const ContingencyMatrix& matrix) {
  if (!matrix.has_canonical_layout()) {
    throw InvalidInput("only matrices with the full canonical cell layout can be saved");
  }
  nlohmann::ordered_json doc;
  doc["group_names"] = matrix.group_names();
  doc["labels"] = matrix.labels();
  doc["column_order"] = "actual-major";
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < matrix.num_groups(); ++i) rows.push_back(matrix.counts().row(i));
  doc["counts"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void SaveContingency(const std::filesystem::path& path, const ContingencyMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << FormatContingency(matrix);
}

}  // namespace eqfair
