#pragma once

#include <optional>
#include <vector>

#include "minkflow/convex_curve.hpp"

namespace minkflow {

/// Symmetry tolerance for functional_E, relative to L_Q.
inline constexpr double kTolSym = 1e-8;

/// g(r) = r L_Q - A - A(P) r^2 together with whether r lies in [r_in, r_out].
struct BonnesenValue {
  double g{0.0};
  bool in_range{false};
};

[[nodiscard]] double bonnesen(const ConvexCurve& c, double r);
[[nodiscard]] BonnesenValue bonnesen(const ConvexCurve& c, double r, const InOutRadii& radii);

/// Largest |gamma(theta) + gamma(theta + pi) - 2 centroid| / L_Q over the grid.
[[nodiscard]] double symmetry_defect(const ConvexCurve& c);

/// E = 1 + A(P) r_in r_out / A - 2 A(P) (r_in + r_out) / L_Q for a centrally
/// symmetric curve, with r_in, r_out the extremes of the support about the
/// center. Throws NotSymmetric when symmetry_defect exceeds tol_sym.
[[nodiscard]] double functional_E(const ConvexCurve& c, double tol_sym = kTolSym);

/// One area-bisecting chord joining gamma(theta) and gamma(theta + pi), and the
/// E-values of the two symmetric curves obtained by reflecting each side through
/// the chord midpoint.
struct ChordEvaluation {
  double theta{0.0};
  double l1{0.0};
  double l2{0.0};
  double e1{0.0};
  double e2{0.0};
  /// (L1 / L_Q) E1 + (L2 / L_Q) E2.
  double weighted{0.0};
};

struct FunctionalF {
  double value{0.0};
  std::vector<ChordEvaluation> chords;
  /// |h| came close to zero without a sign change somewhere: a root may have been missed.
  bool tangency_warning{false};
};

/// Supremum of the weighted E over all bisecting chords with parallel end
/// tangents. Throws NoBisectingChord if the scan finds none.
[[nodiscard]] FunctionalF functional_F(const ConvexCurve& c);

/// Evaluates the weighted E for a single chord start theta (assumed bisecting).
[[nodiscard]] ChordEvaluation evaluate_chord(const ConvexCurve& c, double theta);

/// Signed area excess of the piece between gamma(theta) and gamma(theta + pi)
/// over A / 2.
[[nodiscard]] double bisection_defect(const ConvexCurve& c, double theta);

struct IsoReport {
  double q_length{0.0};
  double area{0.0};
  double area_p{0.0};
  double iso_ratio{0.0};
  /// L_Q^2 / A - 4 A(P).
  double isoperimetric_slack{0.0};
  double r_in{0.0};
  double r_out{0.0};
  double bonnesen_g_at_rin{0.0};
  double bonnesen_g_at_rout{0.0};
  std::optional<double> e_value;
  double f_value{0.0};
  double k2_ds{0.0};
  /// int k^2 ds - A(P) L_Q / A.
  double gage_slack{0.0};
  /// (1 - F) int k^2 ds - A(P) L_Q / A.
  double refined_gage_slack{0.0};
  /// (int f^2 ds)(int k^2 ds) - L_Q^2.
  double schwarz_slack{0.0};
  double k_star{0.0};
  /// C L_Q / A - k*, with C the median-curvature constant of the ball.
  double median_bound_slack{0.0};
  bool radii_converged{false};
  bool tangency_warning{false};
  int chord_count{0};

  /// Smallest of every slack that must be nonnegative.
  [[nodiscard]] double min_slack() const;
};

[[nodiscard]] IsoReport gage_check(const ConvexCurve& c);

}  // namespace minkflow
