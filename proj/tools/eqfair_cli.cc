// eqfair: equal confusion fairness audits from the command line.
//
//   eqfair audit --contingency tables/sex.json
//   eqfair audit --data cases.csv --attrs sex,race --intersect
//   eqfair compas --data compas-scores-two-years-violent.csv --intersect
//   eqfair reproduce [--only sex|race|intersectional]
//
// Exit status: 0 every audit fair at alpha, 2 at least one unfair, 1 error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "eqfair/contingency.h"
#include "eqfair/error.h"
#include "eqfair/groups.h"
#include "eqfair/ingestion.h"
#include "eqfair/report.h"
#include "eqfair/reproduce.h"
#include "eqfair/stats.h"
#include "json.hpp"

namespace {

using namespace eqfair;

constexpr int kExitFair = 0;
constexpr int kExitError = 1;
constexpr int kExitUnfair = 2;
constexpr const char* kConfigEnv = "EQFAIR_CONFIG";

struct AuditOptions {
  std::string data;
  std::string contingency;
  std::vector<std::string> attrs;
  bool intersect = false;
  std::string pred_col = "predicted";
  std::string actual_col = "actual";
  std::vector<std::string> positive_labels;
  std::vector<std::string> labels;
  std::string missing = "drop_row";
  double alpha = 0.001;
  std::string residual_policy = "strict";
  std::optional<double> residual_alpha;
  std::string format = "table";
  std::string out;
  std::int64_t min_group_size = 0;
  bool keep_small_groups = false;
  bool timestamps = false;
  std::string config;
};

// Fills options not given on the command line from a JSON config file.
void ApplyConfig(const CLI::App& app, AuditOptions& o) {
  std::string path = o.config;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open config '{}'", path));
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("{}: {}", path, e.what()));
  }
  auto unset = [&](const char* flag) { return app.count(flag) == 0; };
  try {
    if (cfg.contains("alpha") && unset("--alpha")) o.alpha = cfg["alpha"].get<double>();
    if (cfg.contains("residual_policy") && unset("--residual-policy")) {
      o.residual_policy = cfg["residual_policy"].get<std::string>();
    }
    if (cfg.contains("residual_alpha") && unset("--residual-alpha")) {
      o.residual_alpha = cfg["residual_alpha"].get<double>();
    }
    if (cfg.contains("format") && unset("--format")) o.format = cfg["format"].get<std::string>();
    if (cfg.contains("out") && unset("--out")) o.out = cfg["out"].get<std::string>();
    if (cfg.contains("min_group_size") && unset("--min-group-size")) {
      o.min_group_size = cfg["min_group_size"].get<std::int64_t>();
    }
    if (cfg.contains("attrs") && unset("--attrs")) o.attrs = cfg["attrs"].get<std::vector<std::string>>();
    if (cfg.contains("intersect") && unset("--intersect")) o.intersect = cfg["intersect"].get<bool>();
    if (cfg.contains("pred_col") && unset("--pred-col")) o.pred_col = cfg["pred_col"].get<std::string>();
    if (cfg.contains("actual_col") && unset("--actual-col")) o.actual_col = cfg["actual_col"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("{}: {}", path, e.what()));
  }
}

void AddCommonFlags(CLI::App* cmd, AuditOptions& o) {
  cmd->add_option("--attrs", o.attrs, "Sensitive attribute columns")->delimiter(',');
  cmd->add_flag("--intersect", o.intersect, "Also audit the intersection of all attributes");
  cmd->add_option("--alpha", o.alpha, "Significance level of the equal confusion test")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--residual-policy", o.residual_policy, "Residual significance policy")
      ->check(CLI::IsMember({"strict", "bonferroni"}));
  cmd->add_option("--residual-alpha", o.residual_alpha,
                  "Residual significance level (default 0.001 strict, 0.05 bonferroni)");
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"structured", "table"}));
  cmd->add_option("--out", o.out, "Write one report file per grouping into this directory");
  cmd->add_option("--min-group-size", o.min_group_size, "Drop groups with fewer members");
  cmd->add_flag("--keep-small-groups", o.keep_small_groups,
                "Keep groups below --min-group-size and only warn about them");
  cmd->add_option("--labels", o.labels, "Label order (default lexicographic)")->delimiter(',');
  cmd->add_option("--missing", o.missing, "Rows with missing values")
      ->check(CLI::IsMember({"drop_row", "fail"}));
  cmd->add_flag("--timestamps", o.timestamps, "Prefix output with a generation timestamp");
  cmd->add_option("--config", o.config, fmt::format("JSON config file (or ${})", kConfigEnv));
}

SignificancePolicy PolicyFrom(const AuditOptions& o) {
  const auto kind = PolicyKindFromString(o.residual_policy);
  const double fallback = kind == SignificancePolicy::Kind::kBonferroni ? 0.05 : 0.001;
  return {kind, o.residual_alpha.value_or(fallback)};
}

struct NamedReport {
  std::string slug;
  FairnessReport report;
};

int Emit(const std::vector<NamedReport>& reports, const AuditOptions& o) {
  const auto format = ReportFormatFromString(o.format);
  const char* ext = format == ReportFormat::kStructured ? ".json" : ".txt";
  std::string stamp;
  if (o.timestamps) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    stamp = buf;
  }
  if (!o.out.empty()) std::filesystem::create_directories(o.out);

  bool unfair = false;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& [slug, report] = reports[i];
    unfair = unfair || report.unfair();
    std::string text = Render(report, format);
    if (!o.out.empty()) {
      const auto path = std::filesystem::path(o.out) / (slug + ext);
      std::ofstream file(path, std::ios::binary);
      if (!file) throw DataError(fmt::format("cannot write '{}'", path.string()));
      file << text;
      std::cout << fmt::format("{}: {} ({})\n", report.grouping, report.unfair() ? "unfair" : "fair",
                               path.string());
    } else {
      if (i) std::cout << "\n";
      if (!stamp.empty() && format == ReportFormat::kTable) std::cout << "Generated: " << stamp << "\n";
      std::cout << text;
    }
  }
  if (!stamp.empty() && !o.out.empty()) std::cout << "Generated: " << stamp << "\n";
  return unfair ? kExitUnfair : kExitFair;
}

std::vector<NamedReport> AuditSamples(const SampleSet& data, const AuditOptions& o) {
  const auto policy = PolicyFrom(o);
  std::optional<std::vector<std::string>> labels;
  if (!o.labels.empty()) labels = o.labels;
  std::vector<NamedReport> reports;
  for (auto spec : AuditPlan(o.attrs, o.intersect)) {
    spec.min_group_size = o.min_group_size;
    spec.drop_small_groups = !o.keep_small_groups;
    const auto expanded = ExpandGroups(data, spec);
    if (expanded.samples.empty()) {
      throw InvalidInput(fmt::format("no samples left for grouping '{}'", spec.Describe()));
    }
    const auto matrix = BuildContingency(expanded.samples, labels);
    reports.push_back({spec.Slug(), ComposeReport(matrix, o.alpha, policy,
                                                  {spec.Describe(), expanded.dropped, expanded.sparse})});
  }
  return reports;
}

void PrintIngestSummary(std::int64_t read, std::int64_t kept,
                        const std::vector<std::pair<std::string, std::int64_t>>& removed) {
  std::cerr << fmt::format("read {} rows, kept {}\n", read, kept);
  for (const auto& [reason, count] : removed) {
    if (count) std::cerr << fmt::format("  dropped {} ({})\n", count, reason);
  }
}

int RunAudit(const CLI::App& cmd, AuditOptions o) {
  ApplyConfig(cmd, o);
  if (o.data.empty() == o.contingency.empty()) {
    throw InvalidInput("exactly one of --data or --contingency is required");
  }
  if (!o.contingency.empty()) {
    const auto matrix = LoadContingency(o.contingency);
    const auto stem = std::filesystem::path(o.contingency).stem().string();
    return Emit({{stem, ComposeReport(matrix, o.alpha, PolicyFrom(o), {stem, {}, {}})}}, o);
  }
  if (o.attrs.empty()) throw InvalidInput("--attrs is required with --data");
  DatasetConfig config;
  config.path = o.data;
  config.attribute_columns = o.attrs;
  config.predicted_column = o.pred_col;
  config.actual_column = o.actual_col;
  config.missing_policy = MissingPolicyFromString(o.missing);
  if (!o.positive_labels.empty()) {
    config.positive_labels = std::set<std::string>(o.positive_labels.begin(), o.positive_labels.end());
  }
  const auto loaded = LoadSamples(config);
  std::vector<std::pair<std::string, std::int64_t>> drops;
  for (const auto& [reason, count] : loaded.report.DropsByReason()) drops.emplace_back(reason, count);
  PrintIngestSummary(loaded.report.rows_read, loaded.report.samples_emitted, drops);
  return Emit(AuditSamples(loaded.data, o), o);
}

int RunCompas(const CLI::App& cmd, AuditOptions o, CompasAdapterConfig adapter) {
  ApplyConfig(cmd, o);
  if (o.data.empty()) throw InvalidInput("--data is required");
  if (!o.attrs.empty()) adapter.attribute_columns = o.attrs;
  o.attrs = adapter.attribute_columns;
  adapter.missing_policy = MissingPolicyFromString(o.missing);
  const auto table = ReadCsv(o.data);
  const auto filtered = CompasFilter(table, adapter);
  PrintIngestSummary(filtered.report.rows_read, filtered.report.survivors, filtered.report.removed);
  return Emit(AuditSamples(filtered.data, o), o);
}

int RunReproduce(const std::string& tables, const std::string& only) {
  const auto dir = tables.empty() ? DefaultTablesDir() : std::filesystem::path(tables);
  std::optional<std::string> filter;
  if (!only.empty()) filter = only;
  const auto sections = Reproduce(dir, filter);
  std::cout << RenderReproduction(sections);
  const bool ok = std::all_of(sections.begin(), sections.end(), [](const auto& s) { return s.passed(); });
  return ok ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equal confusion fairness audits: chi-squared test, confusion parity error and "
               "adjusted residual post hoc analysis"};
  app.require_subcommand(1);

  AuditOptions audit_opts;
  auto* audit = app.add_subcommand("audit", "Audit a record file or a contingency matrix");
  auto* data_opt = audit->add_option("--data", audit_opts.data, "Delimited record file with a header row");
  auto* cont_opt = audit->add_option("--contingency", audit_opts.contingency, "Contingency matrix JSON file");
  data_opt->excludes(cont_opt);
  audit->add_option("--pred-col", audit_opts.pred_col, "Predicted label column");
  audit->add_option("--actual-col", audit_opts.actual_col, "Actual label column");
  audit->add_option("--positive-labels", audit_opts.positive_labels,
                    "Raw values mapped to the positive class '+' (others become '-')")
      ->delimiter(',');
  AddCommonFlags(audit, audit_opts);

  AuditOptions compas_opts;
  CompasAdapterConfig adapter;
  auto* compas = app.add_subcommand("compas", "Filter and audit a ProPublica COMPAS extract");
  compas->add_option("--data", compas_opts.data, "COMPAS CSV file");
  compas->add_option("--screening-col", adapter.screening_days_column, "Days between screening and arrest");
  compas->add_option("--screening-window", adapter.screening_window_days, "Screening window in days")
      ->check(CLI::PositiveNumber);
  bool window_exclusive = false;
  compas->add_flag("--window-exclusive", window_exclusive, "Drop cases exactly on the window edge");
  compas->add_option("--assessment-col", adapter.assessment_column, "Column marking a found assessment");
  compas->add_option("--score-text-col", adapter.score_text_column, "Score text column ('' to skip)");
  compas->add_option("--days-outside-col", adapter.days_outside_column,
                     "Days spent outside custody ('' disables the two-year rule)");
  compas->add_option("--min-days-outside", adapter.min_days_outside, "Minimum days outside custody");
  compas->add_option("--case-id-col", adapter.case_id_column, "Drop cases whose id repeats");
  compas->add_option("--score-col", adapter.score_column, "Decile score column");
  compas->add_option("--score-threshold", adapter.score_positive_threshold, "Lowest positive score")
      ->check(CLI::Range(1, 10));
  compas->add_option("--outcome-col", adapter.outcome_column, "Two-year violent recidivism column");
  bool no_extra_exclusions = false;
  compas->add_flag("--no-extra-exclusions", no_extra_exclusions,
                   "Keep ordinary traffic offences (c_charge_degree = O)");
  AddCommonFlags(compas, compas_opts);

  std::string tables, only;
  auto* reproduce = app.add_subcommand("reproduce", "Recompute the bundled COMPAS case-study tables");
  reproduce->add_option("--tables", tables, "Directory holding sex.json, race.json, intersectional.json");
  reproduce->add_option("--only", only, "Run a single case study")
      ->check(CLI::IsMember({"sex", "race", "intersectional"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*audit) return RunAudit(*audit, audit_opts);
    if (*compas) {
      adapter.window_inclusive = !window_exclusive;
      if (no_extra_exclusions) adapter.extra_exclusions.clear();
      return RunCompas(*compas, compas_opts, adapter);
    }
    if (*reproduce) return RunReproduce(tables, only);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
