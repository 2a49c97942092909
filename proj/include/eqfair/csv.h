#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eqfair {

// Comma separated text with a header row. Fields may be double-quoted;
// embedded quotes are doubled. Values are kept verbatim (no trimming).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header; throws DataError when absent.
  std::size_t ColumnIndex(std::string_view name) const;
  bool HasColumn(std::string_view name) const;
};

CsvTable ParseCsv(std::string_view text);
CsvTable ReadCsv(const std::filesystem::path& path);

std::string FormatCsv(const CsvTable& table);
void WriteCsv(const std::filesystem::path& path, const CsvTable& table);

std::string_view Trim(std::string_view s);

}  // namespace eqfair
