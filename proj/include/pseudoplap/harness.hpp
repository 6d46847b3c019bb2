#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pseudoplap/config.hpp"

namespace pseudoplap {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2, exit_runtime_error = 3 };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunOutcome {
  std::vector<CheckResult> checks;
  std::vector<std::filesystem::path> artifacts;

  bool passed() const;
  int exit_code() const { return passed() ? exit_ok : exit_check_failed; }
};

/// Runs one subcommand and writes its artifacts under cfg.out. Every CSV
/// starts with "# pseudoplap <version> config=<hash>"; nothing timing- or
/// path-dependent goes into an artifact, so reruns are byte-identical.
/// Progress and check lines go to `log`.
RunOutcome run(const RunConfig& cfg, std::ostream& log);

/// First line of every CSV artifact.
std::string provenance_line(const RunConfig& cfg);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line plot as standalone SVG text: axes, decade ticks on log axes, one
/// polyline per series and a legend. Non-positive values are dropped on log axes.
std::string svg_line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                          const std::vector<PlotSeries>& series, bool log_x, bool log_y);

/// CLI entry point shared by the tool and the tests:
///   pseudoplap <subcommand> --config <path> [--seed <u64>] [--out <dir>]
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pseudoplap
