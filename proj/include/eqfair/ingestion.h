#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqfair/contingency.h"
#include "eqfair/csv.h"
#include "eqfair/groups.h"

namespace eqfair {

// Binary labels emitted when raw values are mapped onto a positive class.
inline constexpr const char* kPositiveLabel = "+";
inline constexpr const char* kNegativeLabel = "-";

enum class MissingPolicy { kDropRow, kFail };

MissingPolicy MissingPolicyFromString(std::string_view text);

struct DatasetConfig {
  std::filesystem::path path;
  std::vector<std::string> attribute_columns;
  std::string predicted_column = "predicted";
  std::string actual_column = "actual";
  // When set, values in the set become "+" and every other value "-".
  std::optional<std::set<std::string>> positive_labels;
  MissingPolicy missing_policy = MissingPolicy::kDropRow;
};

struct DroppedRow {
  std::size_t row = 0;  // 1-based data row, header excluded
  std::string reason;
};

// Accounts for every input row: rows_read == samples_emitted + drops.size().
struct IngestReport {
  std::int64_t rows_read = 0;
  std::int64_t samples_emitted = 0;
  std::vector<DroppedRow> drops;

  std::map<std::string, std::int64_t> DropsByReason() const;
};

struct LoadedSamples {
  SampleSet data;
  IngestReport report;
};

LoadedSamples LoadSamples(const DatasetConfig& config);
LoadedSamples SamplesFromTable(const CsvTable& table, const DatasetConfig& config);

// Writes samples as CSV with the attribute names, then predicted and actual.
void WriteSamples(const std::filesystem::path& path, const SampleSet& data,
                  const std::string& predicted_column = "predicted",
                  const std::string& actual_column = "actual");

// Column mapping and filters for the ProPublica COMPAS pretrial extract.
// Defaults follow the public violent-recidivism file.
struct CompasAdapterConfig {
  std::vector<std::string> attribute_columns = {"sex", "race"};

  // Rule 1: assessment within the screening window of the arrest.
  std::string screening_days_column = "days_b_screening_arrest";
  std::int64_t screening_window_days = 30;
  bool window_inclusive = true;  // |days| == window is kept

  // Rule 2: a COMPAS assessment exists for the case.
  std::string assessment_column = "is_recid";
  std::set<std::string> assessment_missing_values = {"-1"};
  std::string score_text_column = "v_score_text";
  std::set<std::string> score_text_missing_values = {"N/A"};

  // Rule 3: at least two years outside a correctional facility. Disabled
  // when the column name is empty (the public two-year extracts are already
  // restricted to such cases).
  std::string days_outside_column;
  std::int64_t min_days_outside = 730;

  // Further (column, value) exclusions, e.g. ordinary traffic offences.
  std::vector<std::pair<std::string, std::string>> extra_exclusions = {{"c_charge_degree", "O"}};

  // Cases sharing an id are all removed as ambiguous. Disabled when empty.
  std::string case_id_column;

  std::string score_column = "v_decile_score";
  int score_positive_threshold = 5;  // scores 5-10 (medium, high) are positive
  std::string outcome_column = "two_year_recid";
  std::set<std::string> outcome_positive_values = {"1"};

  MissingPolicy missing_policy = MissingPolicy::kDropRow;

  void Validate() const;
};

struct CompasFilterReport {
  std::int64_t rows_read = 0;
  std::int64_t survivors = 0;
  // Removal count per rule, in the order the rules are applied.
  std::vector<std::pair<std::string, std::int64_t>> removed;
  std::vector<DroppedRow> drops;
};

struct CompasSamples {
  SampleSet data;
  CompasFilterReport report;
};

CompasSamples CompasFilter(const CsvTable& rows, const CompasAdapterConfig& config);

// Structured contingency file:
//   {"group_names": [...], "labels": [...], "column_order": "actual-major",
//    "counts": [[...], ...]}
// Unknown top-level keys are ignored.
ContingencyMatrix LoadContingency(const std::filesystem::path& path);
ContingencyMatrix ParseContingency(const std::string& text, const std::string& origin = "<string>");
std::string FormatContingency(const ContingencyMatrix& matrix);
void SaveContingency(const std::filesystem::path& path, const ContingencyMatrix& matrix);

}  // namespace eqfair
