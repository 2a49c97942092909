#include "eqfair/reproduce.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "eqfair/error.h"
#include "eqfair/ingestion.h"
#include "eqfair/stats.h"
#include "json.hpp"

namespace eqfair {
namespace {

using nlohmann::json;

template <typename T>
Grid<T> ReadGrid(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) {
    throw DataError(fmt::format("published {} must have {} rows", what, rows));
  }
  Grid<T> grid(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw DataError(fmt::format("published {} row {} must have {} entries", what, i, cols));
    }
    for (std::size_t k = 0; k < cols; ++k) grid(i, k) = j[i][k].get<T>();
  }
  return grid;
}

std::string CellName(const ContingencyMatrix& m, std::size_t i, std::size_t j) {
  const auto& c = m.outcome_cells()[j];
  return fmt::format("{} A{}P{}", DisplayGroupName(m.group_names()[i]), c.actual, c.predicted);
}

}  // namespace

const std::vector<std::string>& CaseStudyNames() {
  static const std::vector<std::string> names = {"sex", "race", "intersectional"};
  return names;
}

std::filesystem::path DefaultTablesDir() { return EQFAIR_TABLES_DIR; }

PublishedFixture LoadPublishedFixture(const std::filesystem::path& path) {
  auto observed = LoadContingency(path);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    const auto doc = json::parse(buffer.str());
    const auto& p = doc.at("published");
    const auto q = observed.num_groups(), r = observed.num_cells();
    PublishedValues values;
    values.phi = p.at("phi").get<double>();
    values.p_below = p.at("p_below").get<double>();
    values.expected = ReadGrid<double>(p.at("expected"), q, r, "expected");
    values.residuals = ReadGrid<double>(p.at("residuals"), q, r, "residuals");
    values.significant = ReadGrid<bool>(p.at("significant"), q, r, "significant");
    for (const auto& c : p.at("corrections")) {
      values.corrections.push_back({c.at("group").get<std::string>(), c.at("cell").get<std::size_t>(),
                                    c.at("printed").get<std::int64_t>(), c.at("value").get<std::int64_t>(),
                                    c.at("note").get<std::string>()});
    }
    return {path.stem().string(), doc.value("description", std::string{}), std::move(observed),
            std::move(values)};
  } catch (const json::exception& e) {
    throw DataError(fmt::format("{}: corrupt fixture: {}", path.string(), e.what()));
  }
}

bool ReproductionSection::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const ReproductionCheck& c) { return c.status == CheckStatus::kFail; });
}

ReproductionSection ReproduceFixture(const PublishedFixture& fixture) {
  const auto& pub = fixture.published;
  const auto report = ComposeReport(fixture.observed, pub.p_below, SignificancePolicy::Strict(0.001),
                                    {fixture.name, {}, {}});
  if (!report.test.pruned_columns.empty() || !report.test.pruned_groups.empty()) {
    throw DataError(fmt::format("fixture '{}' has empty rows or columns", fixture.name));
  }
  const auto& observed = fixture.observed;
  const auto q = observed.num_groups(), r = observed.num_cells();
  auto pass_if = [](bool ok) { return ok ? CheckStatus::kPass : CheckStatus::kFail; };

  ReproductionSection section;
  section.name = fixture.name;
  section.description = fixture.description;
  section.phi = report.parity.phi;

  section.checks.push_back({"confusion parity error", fmt::format("{:.4f}", report.parity.phi),
                            fmt::format("{:.2f}", pub.phi), fmt::format("±{}", kPhiTolerance),
                            pass_if(std::fabs(report.parity.phi - pub.phi) <= kPhiTolerance),
                            std::string(ToString(report.parity.strength))});
  section.checks.push_back({"equal confusion test", fmt::format("p = {:.3g}", report.test.p_value),
                            fmt::format("p < {}", pub.p_below), "",
                            pass_if(report.test.p_value < pub.p_below),
                            fmt::format("chi-squared = {:.2f}, dof = {}", report.test.statistic, report.test.dof)});

  double max_e = 0.0, max_r = 0.0;
  std::string worst_e, worst_r;
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const double de = std::fabs(report.test.expected(i, j) - pub.expected(i, j));
      const double dr = std::fabs(report.residuals.residuals(i, j) - pub.residuals(i, j));
      if (de > max_e) max_e = de, worst_e = CellName(observed, i, j);
      if (dr > max_r) max_r = dr, worst_r = CellName(observed, i, j);
    }
  }
  section.max_residual_error = max_r;
  section.checks.push_back({"expected counts", fmt::format("max |diff| = {:.3f}", max_e),
                            fmt::format("{} cells", q * r), fmt::format("±{}", kExpectedTolerance),
                            pass_if(max_e <= kExpectedTolerance), worst_e});
  section.checks.push_back({"adjusted residuals", fmt::format("max |diff| = {:.3f}", max_r),
                            fmt::format("{} cells", q * r), fmt::format("±{}", kResidualTolerance),
                            pass_if(max_r <= kResidualTolerance), worst_r});

  // A published flag may disagree with ours only where the residual sits on
  // the critical value within the printed precision.
  std::size_t computed_count = 0, published_count = 0;
  std::vector<std::string> borderline, mismatched;
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const bool ours = report.residuals.significant(i, j);
      const bool theirs = pub.significant(i, j);
      computed_count += ours;
      published_count += theirs;
      if (ours == theirs) continue;
      const double value = report.residuals.residuals(i, j);
      const auto text = fmt::format("{} (R = {:.4f}, critical {:.4f}, {} significant)", CellName(observed, i, j),
                                    value, report.residuals.critical_value, theirs ? "published as" : "not published as");
      if (std::fabs(std::fabs(value) - report.residuals.critical_value) <= kResidualTolerance) {
        borderline.push_back(text);
      } else {
        mismatched.push_back(text);
      }
    }
  }
  ReproductionCheck flags{"significant cells", fmt::format("{} cells", computed_count),
                          fmt::format("{} cells", published_count), "exact", CheckStatus::kPass, ""};
  if (!mismatched.empty()) {
    flags.status = CheckStatus::kFail;
    flags.note = fmt::format("{} cell(s) disagree", mismatched.size());
  } else if (!borderline.empty()) {
    flags.status = CheckStatus::kDiscrepancy;
    flags.note = fmt::format("{} borderline cell(s)", borderline.size());
  }
  section.checks.push_back(flags);

  for (const auto& m : mismatched) section.discrepancies.push_back("significance mismatch: " + m);
  for (const auto& b : borderline) section.discrepancies.push_back("borderline significance: " + b);
  for (const auto& c : pub.corrections) {
    section.discrepancies.push_back(fmt::format("fixture count for {} cell {} is {} (printed {}): {}",
                                                DisplayGroupName(c.group), c.cell, c.value, c.printed, c.note));
  }
  return section;
}

std::vector<ReproductionSection> Reproduce(const std::filesystem::path& tables_dir,
                                           const std::optional<std::string>& only) {
  const auto& names = CaseStudyNames();
  if (only && std::find(names.begin(), names.end(), *only) == names.end()) {
    throw InvalidInput(fmt::format("unknown case study '{}' (expected sex|race|intersectional)", *only));
  }
  std::vector<ReproductionSection> sections;
  for (const auto& name : names) {
    if (only && *only != name) continue;
    sections.push_back(ReproduceFixture(LoadPublishedFixture(tables_dir / (name + ".json"))));
  }
  return sections;
}

std::string RenderReproduction(const std::vector<ReproductionSection>& sections) {
  auto status = [](CheckStatus s) {
    switch (s) {
      case CheckStatus::kPass: return "PASS";
      case CheckStatus::kFail: return "FAIL";
      case CheckStatus::kDiscrepancy: return "NOTE";
    }
    return "?";
  };
  std::string out;
  for (const auto& s : sections) {
    out += fmt::format("== {} ==\n", s.name);
    if (!s.description.empty()) out += s.description + "\n";
    for (const auto& c : s.checks) {
      out += fmt::format("  [{}] {:<24} computed {:<24} published {:<14} {}", status(c.status), c.name,
                         c.computed, c.published, c.tolerance);
      if (!c.note.empty()) out += "  (" + c.note + ")";
      while (!out.empty() && out.back() == ' ') out.pop_back();
      out += "\n";
    }
    for (const auto& d : s.discrepancies) out += "  discrepancy: " + d + "\n";
    out += "\n";
  }
  const bool all = std::all_of(sections.begin(), sections.end(), [](const auto& s) { return s.passed(); });
  out += fmt::format("{} of {} case studies reproduced{}\n",
                     std::count_if(sections.begin(), sections.end(), [](const auto& s) { return s.passed(); }),
                     sections.size(), all ? "" : " (see FAIL lines)");
  return out;
}

}  // namespace eqfair
