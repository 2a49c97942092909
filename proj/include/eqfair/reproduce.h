#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eqfair/contingency.h"
#include "eqfair/grid.h"
#include "eqfair/report.h"

namespace eqfair {

// Reference values shipped alongside a bundled contingency fixture.
struct PublishedCorrection {
  std::string group;
  std::size_t cell = 0;
  std::int64_t printed = 0;
  std::int64_t value = 0;
  std::string note;
};

struct PublishedValues {
  double phi = 0.0;
  double p_below = 0.001;
  Grid<double> expected;
  Grid<double> residuals;
  Grid<bool> significant;
  std::vector<PublishedCorrection> corrections;
};

struct PublishedFixture {
  std::string name;
  std::string description;
  ContingencyMatrix observed;
  PublishedValues published;
};

PublishedFixture LoadPublishedFixture(const std::filesystem::path& path);

// Names of the bundled case-study fixtures, in report order.
const std::vector<std::string>& CaseStudyNames();

std::filesystem::path DefaultTablesDir();

enum class CheckStatus { kPass, kFail, kDiscrepancy };

struct ReproductionCheck {
  std::string name;
  std::string computed;
  std::string published;
  std::string tolerance;
  CheckStatus status = CheckStatus::kFail;
  std::string note;
};

struct ReproductionSection {
  std::string name;
  std::string description;
  std::vector<ReproductionCheck> checks;
  std::vector<std::string> discrepancies;
  double phi = 0.0;
  double max_residual_error = 0.0;

  bool passed() const;
};

// Tolerances used when comparing against the published values.
inline constexpr double kPhiTolerance = 0.005;
inline constexpr double kExpectedTolerance = 0.5;
inline constexpr double kResidualTolerance = 0.05;

ReproductionSection ReproduceFixture(const PublishedFixture& fixture);

// Runs every bundled fixture (or only `only`) found in `tables_dir`.
std::vector<ReproductionSection> Reproduce(const std::filesystem::path& tables_dir,
                                           const std::optional<std::string>& only = std::nullopt);

std::string RenderReproduction(const std::vector<ReproductionSection>& sections);

}  // namespace eqfair
