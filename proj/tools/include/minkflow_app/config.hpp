#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minkflow/flow_solver.hpp"
#include "minkflow/support_function.hpp"

namespace minkflow::app {

/// Raised for unreadable or invalid configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<Harmonic> ball_harmonics{{0, 1.0, 0.0}};
  std::vector<Harmonic> curvature_harmonics{{0, 1.0, 0.0}};
  int grid{256};
  SolverConfig solver;
  Vec2 base;
  std::filesystem::path output_dir{"out"};
  /// Slack tolerance used by certify.
  double certify_tol{1e-8};
};

/// Parses JSON text. Unknown keys are rejected.
///
///   {
///     "unit_ball": {"harmonics": [[0, 1, 0], [2, 0.2, 0]]},
///     "initial_curvature": {"harmonics": [[0, 1, 0], [4, 0.3, 0]]},
///     "grid": 256,
///     "base": [0, 0],
///     "solver": {"sigma": 0.4, "area_fraction": 0.01, "max_time": 10,
///                "max_steps": 1000000, "snapshot_every": 200,
///                "tol_close": 1e-6, "tol_pos": 1e-8, "max_retries": 8},
///     "certify": {"tol": 1e-8},
///     "output_dir": "out"
///   }
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace minkflow::app
