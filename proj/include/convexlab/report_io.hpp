#pragma once

#include "convexlab/experiments.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace convexlab {

/// An experiment report with the run-level identity and expected outcome.
struct LabeledReport {
  std::string id;
  /// "pass" or "fail".
  std::string expect = "pass";
  ExperimentReport report;

  bool matches_expectation() const { return report.summary.pass == (expect == "pass"); }
};

/// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double x);

/// Full report without runtime, so identical runs give identical bytes.
nlohmann::json report_to_json(const LabeledReport& r);

/// Columns: id, b0..b{m-1}, value_K, value_L, abs_diff, rel_diff, stderr.
std::string samples_csv(const ExperimentReport& r);

/// Columns: experiment, id, basis (entries joined by ';'), value_K, value_L,
/// abs_diff, rel_diff, stderr.
std::string combined_samples_csv(const std::vector<LabeledReport>& reports);

nlohmann::json timing_json(const std::vector<LabeledReport>& reports);

/// Writes the file, creating parent directories. Throws std::runtime_error.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace convexlab
