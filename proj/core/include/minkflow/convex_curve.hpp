#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "minkflow/spectral.hpp"
#include "minkflow/support_function.hpp"
#include "minkflow/unit_ball.hpp"
#include "minkflow/vec2.hpp"

namespace minkflow {

/// Default closure tolerance, relative to the Q-length.
inline constexpr double kDefaultTolClose = 1e-6;

/// Closed, strictly convex curve stored by its Minkowski curvature k(theta).
///
/// The curve is parameterized in the theta-gauge: gamma'(theta) = lambda q(theta)
/// with lambda = [p, p'] / k. Vertices are derived by spectral integration of
/// gamma' = (a + a'')/k (-sin, cos) and translated so that gamma(0) = base.
/// Immutable after construction.
class ConvexCurve {
 public:
  /// Throws NonPositiveCurvature if some k_i <= 0 and ClosureViolation if the
  /// first-harmonic moments of (a + a'')/k exceed tol_close * L_Q.
  static ConvexCurve from_curvature(std::shared_ptr<const UnitBall> ball, std::vector<double> k,
                                    Vec2 base = {}, double tol_close = kDefaultTolClose);

  [[nodiscard]] const UnitBall& ball() const { return *ball_; }
  [[nodiscard]] const std::shared_ptr<const UnitBall>& ball_ptr() const { return ball_; }
  [[nodiscard]] const AngleGrid& grid() const { return ball_->grid(); }
  [[nodiscard]] int size() const { return ball_->size(); }

  [[nodiscard]] const std::vector<double>& curvature() const { return k_; }
  /// lambda = [p, p'] / k, the Q-speed d s / d theta.
  [[nodiscard]] const std::vector<double>& speed() const { return lambda_; }
  /// (a + a'') / k, the Euclidean radius of curvature.
  [[nodiscard]] const std::vector<double>& euclidean_radius() const { return rho_; }
  [[nodiscard]] const std::vector<Vec2>& vertices() const { return gamma_; }
  [[nodiscard]] Vec2 tangent(int i) const { return lambda_[i] * ball_->q()[i]; }
  [[nodiscard]] Vec2 base() const { return gamma_.front(); }

  /// (R_sin, R_cos) = integrals of (a + a'')/k times sin and cos.
  [[nodiscard]] std::pair<double, double> closure_residuals() const { return {r_sin_, r_cos_}; }

  [[nodiscard]] double tol_close() const { return tol_close_; }

  [[nodiscard]] double q_length() const { return length_; }
  [[nodiscard]] double area() const { return area_; }
  [[nodiscard]] Vec2 centroid() const { return centroid_; }

  /// f_i = [gamma_i - origin, q_i].
  [[nodiscard]] std::vector<double> support_about(const Vec2& origin) const;
  /// Support samples about the area centroid.
  [[nodiscard]] const std::vector<double>& support() const { return support_; }

  /// Spectral evaluation of gamma between nodes.
  [[nodiscard]] Vec2 position_at(double theta) const;
  /// Euclidean support value <gamma(theta), e_r(theta)> in the outward normal direction e_r.
  [[nodiscard]] double euclidean_support_at(double theta) const;

  [[nodiscard]] ConvexCurve translated(const Vec2& shift) const;
  /// Homothety about the origin: k / s, vertices * s.
  [[nodiscard]] ConvexCurve scaled(double s) const;

 private:
  ConvexCurve() = default;

  std::shared_ptr<const UnitBall> ball_;
  std::vector<double> k_, lambda_, rho_, support_;
  std::vector<Vec2> gamma_;
  PeriodicInterpolant x_interp_, y_interp_;
  double r_sin_{0.0}, r_cos_{0.0};
  double length_{0.0}, area_{0.0};
  Vec2 centroid_;
  double tol_close_{kDefaultTolClose};
};

/// Samples sum_j (c_j cos(m_j theta) + s_j sin(m_j theta)) on the grid. Any
/// nonnegative orders are allowed; throws std::invalid_argument on a negative or
/// repeated order or a sine coefficient at order zero.
[[nodiscard]] std::vector<double> sample_harmonics(std::span<const Harmonic> harmonics,
                                                   const AngleGrid& grid);

struct CurveMetrics {
  double q_length{0.0};
  double area{0.0};
  double iso_ratio{0.0};
  double k_min{0.0};
  double k_max{0.0};
  /// Minimum curvature radius 1 / k_max.
  double mu0{0.0};
  double k_star{0.0};
  double r_in{0.0};
  double r_out{0.0};
};

[[nodiscard]] CurveMetrics metrics(const ConvexCurve& c);

/// Residuals of the integral identities
///   I_a = int k ds - 2 A(P),  I_b = int f ds - 2 A,  I_c = int f k ds - L_Q,
/// with f measured from `origin` (the centroid when omitted).
struct IdentityResiduals {
  double i_a{0.0};
  double i_b{0.0};
  double i_c{0.0};
};

[[nodiscard]] IdentityResiduals prop1_identities(const ConvexCurve& c,
                                                 std::optional<Vec2> origin = std::nullopt);

/// Median curvature: the largest x with k > x on some theta-interval of length pi,
/// via a sliding-window minimum over N/2-node windows.
[[nodiscard]] double median_curvature(const ConvexCurve& c);

/// min / max over theta of the support samples f about `origin`, each refined by a
/// parabola through the extreme node and its neighbours.
struct SupportRange {
  double min{0.0};
  double max{0.0};
};
[[nodiscard]] SupportRange support_range(std::span<const double> f);

/// Radii of the largest inscribed and smallest circumscribed P-circles.
struct InOutRadii {
  double r_in{0.0};
  double r_out{0.0};
  Vec2 center_in;
  Vec2 center_out;
  bool converged{false};
};

[[nodiscard]] InOutRadii inscribed_circumscribed(const ConvexCurve& c);

/// Inner parallel curve beta = gamma - r p at distance r < mu0; its curvature is
/// k / (1 - r k). Throws RadiusTooLarge if r >= mu0 and std::invalid_argument if r < 0.
[[nodiscard]] ConvexCurve inner_parallel(const ConvexCurve& c, double r);

/// Q-length of the boundary of the inner parallel body {x : x + r P inside c}
/// for any 0 <= r <= r_in, corners allowed. Computed as the Q-perimeter of the
/// intersection of `directions` supporting half-planes (8N when 0).
[[nodiscard]] double parallel_body_q_length(const ConvexCurve& c, double r, int directions = 0);

/// int_0^{r_in} L_Q(r) dr, with the exact linear law on [0, mu0] and the
/// half-plane construction beyond.
[[nodiscard]] double area_from_parallel_lengths(const ConvexCurve& c, double r_in);

}  // namespace minkflow
