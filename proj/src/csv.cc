#include "eqfair/csv.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "eqfair/error.h"

namespace eqfair {

std::size_t CsvTable::ColumnIndex(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError(fmt::format("missing column '{}'", name));
  return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::HasColumn(std::string_view name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

std::string_view Trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

CsvTable ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // Blank lines carry no data.
    if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          throw DataError(fmt::format("line {}: stray quote inside unquoted field", line));
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw DataError(fmt::format("line {}: unterminated quoted field", line));
  if (field_started || !record.empty()) end_record();

  if (records.empty()) throw DataError("no header row");
  CsvTable table;
  table.header = std::move(records.front());
  for (auto& h : table.header) h = std::string(Trim(h));
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw DataError(fmt::format("row {}: {} fields, header has {}", r, records[r].size(),
                                  table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable ReadCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseCsv(buffer.str());
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

namespace {

std::string QuoteIfNeeded(const std::string& value) {
  const bool needs = value.find_first_of(",\"\r\n") != std::string::npos ||
                     (!value.empty() && (value.front() == ' ' || value.back() == ' '));
  if (!needs) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void AppendRecord(std::string& out, const std::vector<std::string>& record) {
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (i) out += ',';
    out += QuoteIfNeeded(record[i]);
  }
  out += '\n';
}

}  // namespace

std::string FormatCsv(const CsvTable& table) {
  std::string out;
  AppendRecord(out, table.header);
  for (const auto& row : table.rows) AppendRecord(out, row);
  return out;
}

void WriteCsv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << FormatCsv(table);
}

}  // namespace eqfair
