#pragma once

#include "convexlab/report_io.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace convexlab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;

struct RunConfig {
  /// construct | lemma1 | sections | slabs | projections | convergence | certify | all
  std::string command;
  std::string pair = "smooth";
  std::optional<std::filesystem::path> body_k;
  std::optional<std::filesystem::path> body_l;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<int> i;
  std::optional<double> t;
  std::optional<int> samples;
  std::uint64_t seed = 7;
  std::optional<double> tol;
  std::filesystem::path out_dir = "out";
  /// construct only: the two spec files.
  std::vector<std::filesystem::path> construct_out;
  bool svg = false;
};

/// Reports a command would produce, before anything is written.
std::vector<LabeledReport> run_experiments(const RunConfig& config);

/// Runs the command and writes report.json, samples.csv, timing.json and,
/// with svg, the plots. Returns 0 on pass, 2 on fail, 1 on error (after
/// removing partial outputs). A single experiment passes when its check
/// passes; `all` passes when every report matches its expected outcome.
int run(const RunConfig& config, std::ostream& log);

}  // namespace convexlab
