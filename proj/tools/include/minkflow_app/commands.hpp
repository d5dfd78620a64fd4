#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace minkflow::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitSolver = 2,
  kExitSlack = 3,
  kExitSelftest = 4,
};

struct SimulateOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<int> snapshots_every;
  std::optional<int> grid;
  bool quiet{false};
};

/// Writes snapshots.csv, frames/NNNN.csv and report.json under the output directory.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

struct CertifyOptions {
  std::optional<std::filesystem::path> config;
  /// Two-column theta,k file; overrides the config's initial curvature.
  std::optional<std::filesystem::path> curve;
  std::optional<std::filesystem::path> out;
  std::optional<int> grid;
  bool quiet{false};
};

/// Prints the inequality report as JSON on `out`.
int cmd_certify(const CertifyOptions& opts, std::ostream& out, std::ostream& err);

struct SelftestOptions {
  std::optional<int> grid;
  double area_offset{0.0};
  bool quiet{false};
};

int cmd_selftest(const SelftestOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace minkflow::app
