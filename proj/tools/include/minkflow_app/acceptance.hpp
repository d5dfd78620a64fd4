#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "minkflow/support_function.hpp"
#include "minkflow/unit_ball.hpp"

namespace minkflow::app {

struct AcceptanceOptions {
  /// Replaces every grid size used by the suite (the refinement study uses twice this).
  std::optional<int> grid;
  /// Added to the cached area of every unit ball the suite builds.
  double area_offset{0.0};
};

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed{false};
  std::string detail;
  double seconds{0.0};
};

/// Runs A1..A9 in order, printing one line per criterion to `out` when given.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* out);

/// One formatted table line.
std::string format_result(const CriterionResult& r);

/// Deterministic uniform doubles in [lo, hi) from a 64-bit Mersenne twister.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

/// The three balls the suite uses: the disc, 1 + 0.2 cos 2t, and a ball with
/// second and fourth harmonics.
std::vector<Harmonic> suite_ball_harmonics(int which);

/// Builds a ball, applying the area fault if requested.
std::shared_ptr<const UnitBall> make_ball(std::span<const Harmonic> harmonics, int n,
                                          double area_offset = 0.0);

/// Random closure-admissible curvature without central symmetry: 1/k is a
/// random trigonometric polynomial of degree <= 5 whose first harmonic is
/// solved for so that the closure moments vanish on the grid.
std::vector<double> random_admissible_curvature(const UnitBall& ball, UniformSource& rng);

}  // namespace minkflow::app
