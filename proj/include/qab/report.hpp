#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace qab {

/// One named residual against its tolerance.
struct Check {
  std::string suite;
  std::string name;
  std::vector<int> M;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

/// Builds a check whose pass flag is residual < threshold (NaN fails).
Check make_check(std::string name, double residual, double threshold, std::string note = {});

/// Check passing when value > threshold (used for null-space dimension style assertions).
Check make_lower_bound_check(std::string name, double value, double threshold,
                             std::string note = {});

struct VerificationReport {
  int schema_version = 1;
  std::string suite;
  std::string software_version;
  nlohmann::json config;
  nlohmann::json parameters;
  std::vector<Check> checks;
  nlohmann::json extra;  // suite-specific tables, e.g. convergence fits
  double wall_time_seconds = 0.0;

  bool all_pass() const;
  void append(const std::vector<Check>& more);
};

double max_residual(const std::vector<Check>& checks);
bool all_pass(const std::vector<Check>& checks);

nlohmann::json to_json(const VerificationReport& report, bool include_timing = true);
VerificationReport report_from_json(const nlohmann::json& j);

/// Header: suite,check,M,residual,threshold,pass. Residuals use 17 significant digits.
std::string to_csv_summary(const VerificationReport& report);

/// Writes json or csv-summary to path ("-" writes to stdout). Throws QabError on I/O failure.
void emit_report(const VerificationReport& report, const std::string& format,
                 const std::string& path);

std::string format_residual(double x);

}  // namespace qab
