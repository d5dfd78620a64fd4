#pragma once

#include <vector>

#include "minkflow/angle_grid.hpp"
#include "minkflow/support_function.hpp"
#include "minkflow/vec2.hpp"

namespace minkflow {

/// Q-lengths of the two tangent segments cut off by the tangents to the unit
/// P-circle at theta1 and theta2, the Q-length of the arc between them, and the
/// excess delta = L1 + L2 - arc.
struct TangentChord {
  double l1{0.0};
  double l2{0.0};
  double arc{0.0};
  double delta{0.0};
};

/// The unit ball P of a Minkowski plane together with its dual Q, cached on an
/// AngleGrid.
///
/// p(theta) = a e_r + a' e_theta is the boundary of P with p' parallel to
/// e_theta; q(theta) = e_theta / a is the boundary of Q. All per-node arrays are
/// filled at construction and the object is immutable afterwards.
class UnitBall {
 public:
  /// Throws InvalidUnitBall listing the offending nodes if a <= 0 or a + a'' <= 0.
  static UnitBall build(const SupportFunction& sf, const AngleGrid& grid);

  [[nodiscard]] const SupportFunction& support() const { return sf_; }
  [[nodiscard]] const AngleGrid& grid() const { return grid_; }
  [[nodiscard]] int size() const { return grid_.size(); }

  // Per-node caches.
  [[nodiscard]] const std::vector<double>& a() const { return a_; }
  [[nodiscard]] const std::vector<double>& da() const { return da_; }
  [[nodiscard]] const std::vector<double>& d2a() const { return d2a_; }
  /// a + a'', the Euclidean radius of curvature of the boundary of P.
  [[nodiscard]] const std::vector<double>& radius_sum() const { return radius_sum_; }
  [[nodiscard]] const std::vector<Vec2>& p() const { return p_; }
  [[nodiscard]] const std::vector<Vec2>& q() const { return q_; }
  /// e_r(theta_i) = (cos, sin).
  [[nodiscard]] const std::vector<Vec2>& normals() const { return normals_; }
  /// [p, p'] = a (a + a'').
  [[nodiscard]] const std::vector<double>& bracket_pp() const { return bracket_pp_; }
  /// [q, q'] = a^-2.
  [[nodiscard]] const std::vector<double>& bracket_qq() const { return bracket_qq_; }
  /// a / (a + a''), the diffusion coefficient of the curvature equation.
  [[nodiscard]] const std::vector<double>& fcoef() const { return fcoef_; }
  /// 2 a' / (a + a''), the drift coefficient of the curvature equation.
  [[nodiscard]] const std::vector<double>& gcoef() const { return gcoef_; }

  /// Area of P, periodic trapezoid rule applied to 1/2 [p, p'].
  [[nodiscard]] double area() const { return area_; }

  // Off-grid evaluation, exact from the Fourier form.
  [[nodiscard]] Vec2 p_at(double theta) const;
  [[nodiscard]] Vec2 q_at(double theta) const;
  [[nodiscard]] double bracket_pp_at(double theta) const;

  /// ||v||_P: the t >= 0 with v = t p(theta*). Zero for v = 0.
  [[nodiscard]] double minkowski_norm(const Vec2& v) const;

  /// Dual support p*(w) evaluated on the direction theta: [w, q(theta)].
  [[nodiscard]] double dual_support(const Vec2& w, double theta) const;

  /// Requires 0 < theta2 - theta1 < pi (mod 2pi); throws std::invalid_argument otherwise.
  [[nodiscard]] TangentChord tangent_chord(double theta1, double theta2) const;

  /// Constant of the median-curvature bound k* <= C L_Q / A: max|q|^2 max[p,p'].
  [[nodiscard]] double median_bound_constant() const;

  /// Copy with area() shifted by `offset`; used only to exercise the checks
  /// that depend on it.
  [[nodiscard]] UnitBall with_area_offset(double offset) const;

 private:
  UnitBall(SupportFunction sf, AngleGrid grid);

  SupportFunction sf_;
  AngleGrid grid_;
  TrigPolynomial bracket_pp_poly_;
  std::vector<double> a_, da_, d2a_, radius_sum_;
  std::vector<Vec2> p_, q_, normals_;
  std::vector<double> bracket_pp_, bracket_qq_, fcoef_, gcoef_;
  double area_{0.0};
};

}  // namespace minkflow
