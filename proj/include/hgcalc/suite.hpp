// suite.hpp - configuration, orchestration and report emission
#pragma once

#include <string>
#include <vector>

#include "hgcalc/verify.hpp"

namespace hgcalc {

inline constexpr const char* kVersion = "0.1.0";

struct SuiteConfig {
  /// Shipped ids or JSON group files; empty selects every shipped group.
  std::vector<std::string> groups;
  /// Quasi-norm ids; empty selects the ones shipped with each group.
  std::vector<std::string> quasinorms;
  /// Battery ids, or "all", "annulus", "smooth".
  std::vector<std::string> fields{"all"};
  /// Check families, individual check ids, or "all".
  std::vector<std::string> checks{"all"};
  Tolerances tolerances;
  /// Empty: the default grid for each group.
  std::vector<double> alphas;
  int sharpness_budget = 200;
  bool error_estimates = true;
  std::string out;
  std::string format = "json";
  /// 0: HGCALC_THREADS, else hardware concurrency.
  int threads = 0;
  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

/// Every family id accepted in SuiteConfig::checks besides "all".
std::vector<std::string> check_family_ids();

/// Reads the JSON schema of SuiteConfig; unknown keys and bad values are config errors.
SuiteConfig suite_config_from_json(const std::string& text);
SuiteConfig load_suite_config(const std::string& path);
/// Echo used in reports; output path and thread count are left out so the
/// report does not depend on them.
std::string suite_config_to_json(const SuiteConfig& cfg);

/// Throws config-error naming the offending key.
void validate(const SuiteConfig& cfg);

struct SuiteSummary {
  int pass = 0;
  int fail = 0;  // includes errored
  int skipped = 0;
  int errored = 0;
  friend bool operator==(const SuiteSummary&, const SuiteSummary&) = default;
};

struct SuiteReport {
  std::string version = kVersion;
  SuiteConfig config;
  std::vector<CheckReport> checks;
  SuiteSummary summary;
  /// Seconds; printed to stderr, never serialised.
  double wall_time = 0.0;
};

SuiteSummary summarize(const std::vector<CheckReport>& checks);

/// Cross product groups x quasinorms x fields x checks; incompatible
/// combinations become skipped reports, crashing checks errored ones.
/// Reports are sorted by check_id, then params.
SuiteReport run_suite(const SuiteConfig& cfg);

enum class ReportFormat { json, csv, markdown };
ReportFormat parse_report_format(const std::string& s);

std::string emit_report(const SuiteReport& r, ReportFormat fmt);
/// Throws io-error when the file cannot be written.
void write_report(const SuiteReport& r, ReportFormat fmt, const std::string& path);
/// Inverse of emit_report(.., json).
SuiteReport report_from_json(const std::string& text);

}  // namespace hgcalc
