#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "minkflow/convex_curve.hpp"
#include "minkflow/unit_ball.hpp"

namespace minkflow {

struct SolverConfig {
  /// CFL safety factor in dt = sigma h^2 / max(Fcoef k^2).
  double sigma{0.4};
  /// Stop once A(t) <= area_fraction * A(0).
  double area_fraction{0.01};
  double max_time{std::numeric_limits<double>::infinity()};
  long max_steps{50'000'000};
  /// Full diagnostics every this many accepted steps (and at both ends).
  int snapshot_every{200};
  double tol_close{kDefaultTolClose};
  double tol_pos{1e-8};
  /// Total number of sigma halvings allowed over a run.
  int max_retries{8};

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

/// Curvature field at time t plus the lab-frame translation integrals
///   T1(t) = int_0^t a(0) k(0, s) ds,
///   T2(t) = int_0^t a(0) dk/dtheta(0, s) + a'(0) k(0, s) ds.
class FlowState {
 public:
  static FlowState initial(std::shared_ptr<const UnitBall> ball, std::vector<double> k0,
                           Vec2 base = {}, double tol_close = kDefaultTolClose);

  [[nodiscard]] double time() const { return t_; }
  [[nodiscard]] const std::vector<double>& curvature() const { return curve_.curvature(); }
  [[nodiscard]] Vec2 translation() const { return {t1_, t2_}; }
  [[nodiscard]] const ConvexCurve& curve() const { return curve_; }
  [[nodiscard]] const UnitBall& ball() const { return curve_.ball(); }
  [[nodiscard]] double initial_k_min() const { return k_min0_; }
  [[nodiscard]] double initial_area() const { return area0_; }

 private:
  friend FlowState step(const FlowState& state, const SolverConfig& cfg);
  FlowState(ConvexCurve curve, double t, double t1, double t2, double k_min0, double area0)
      : curve_(std::move(curve)), t_(t), t1_(t1), t2_(t2), k_min0_(k_min0), area0_(area0) {}

  ConvexCurve curve_;
  double t_{0.0};
  double t1_{0.0};
  double t2_{0.0};
  double k_min0_{0.0};
  double area0_{0.0};
};

/// Fourth-order central differences on a periodic grid with spacing h.
[[nodiscard]] std::vector<double> periodic_d1(std::span<const double> u, double h);
[[nodiscard]] std::vector<double> periodic_d2(std::span<const double> u, double h);

/// dk/dt = Fcoef k^2 k_thth + Gcoef k^2 k_th + k^3.
[[nodiscard]] std::vector<double> pde_rhs(const UnitBall& ball, std::span<const double> k);

/// sigma h^2 / max_i(Fcoef_i k_i^2).
[[nodiscard]] double stable_time_step(const UnitBall& ball, std::span<const double> k, double sigma);

/// One classical RK4 step of the curvature equation and the translation
/// integrals. Throws StepRejected if k would drop below half its initial
/// minimum or the closure residual would exceed cfg.tol_close.
[[nodiscard]] FlowState step(const FlowState& state, const SolverConfig& cfg);

/// Lab-frame vertices F(theta_i, t) = gamma(theta_i, t) - (T1, T2).
[[nodiscard]] std::vector<Vec2> reconstruct_frame(const FlowState& state);

/// Predicted normal-plus-tangential velocity -k p - a^2 k_theta q at every node.
[[nodiscard]] std::vector<Vec2> frame_velocity(const FlowState& state);

/// Cheap per-step record used for the evolution laws.
struct TraceRow {
  long step{0};
  double t{0.0};
  double dt{0.0};
  double q_length{0.0};
  double area{0.0};
  double iso_ratio{0.0};
  /// int k^2 ds.
  double k2_ds{0.0};
  double r_sin{0.0};
  double r_cos{0.0};
  /// J = int (a k)^2 - (d(a k)/dtheta)^2 dtheta.
  double j{0.0};
  /// int (d(a k)/dtheta)^2 + (a k)^2 dtheta, the scale J is compared against.
  double j_scale{0.0};
  /// W = int a (a + a'') log k dtheta.
  double w{0.0};
  double k_min{0.0};
  double k_max{0.0};
};

/// Full diagnostics at a snapshot.
struct SnapshotRecord {
  long step{0};
  double t{0.0};
  std::vector<double> k;
  /// Lab-frame position of the theta = 0 vertex.
  Vec2 base;
  double q_length{0.0};
  double area{0.0};
  double iso_ratio{0.0};
  double k2_ds{0.0};
  double r_sin{0.0};
  double r_cos{0.0};
  double j{0.0};
  double w{0.0};
  double k_min{0.0};
  double k_max{0.0};
  double k_star{0.0};
  double f_value{0.0};
  double hausdorff{0.0};
  double r_in{0.0};
  double r_out{0.0};
  double bonnesen_rin{0.0};
  double bonnesen_rout{0.0};
  double isoperimetric_slack{0.0};
  double gage_slack{0.0};
  double refined_gage_slack{0.0};
  double median_bound_slack{0.0};
  /// L_Q (int k^2 ds - A(P) L_Q / A); recorded, not asserted.
  double gage_product{0.0};
};

[[nodiscard]] TraceRow trace_row(const FlowState& state, long step_index, double dt);
[[nodiscard]] SnapshotRecord snapshot_record(const FlowState& state, long step_index);

/// Hausdorff distance between the centered, area-normalized curve
/// sqrt(A(P) / A) (gamma - centroid) and P, from Euclidean support functions.
[[nodiscard]] double hausdorff_to_ball(const ConvexCurve& c);

struct DiagnosticsSeries {
  std::vector<TraceRow> trace;
  std::vector<SnapshotRecord> snapshots;
};

enum class FlowStatus { AreaThreshold, TimeLimit, StepLimit, Failed };

[[nodiscard]] std::string to_string(FlowStatus s);

struct FlowResult {
  FlowStatus status{FlowStatus::Failed};
  std::string message;
  DiagnosticsSeries series;
  long steps{0};
  int retries{0};
  /// Safety factor in force at the end; below the configured one after a rejection.
  double final_sigma{0.0};
  /// t_last + A(t_last) / (2 A(P)).
  double vanishing_time_estimate{0.0};
};

/// Called at every snapshot with the state it was taken from.
using SnapshotObserver = std::function<void(const FlowState&, const SnapshotRecord&)>;

/// Integrates until A <= area_fraction * A(0), the time or step limit, or retry
/// exhaustion. Failures return status Failed with the series so far attached.
[[nodiscard]] FlowResult run_flow(std::shared_ptr<const UnitBall> ball, std::vector<double> k0,
                                  const SolverConfig& cfg, Vec2 base = {},
                                  const SnapshotObserver& observer = {});

/// Largest relative mismatch of each evolution law over interior rows, using
/// three-point central differences on the (nonuniform) time grid:
///   dA/dt = -2 A(P),  dL/dt = -int k^2 ds,
///   d(L^2/A)/dt = -(2L/A)(int k^2 ds - A(P) L / A),  dW/dt = J.
struct EvolutionResiduals {
  double area{0.0};
  double length{0.0};
  double iso{0.0};
  double entropy{0.0};
  int samples{0};
};

/// Requires at least three rows; throws std::invalid_argument otherwise.
[[nodiscard]] EvolutionResiduals evolution_residuals(std::span<const TraceRow> rows, double area_p);

}  // namespace minkflow
