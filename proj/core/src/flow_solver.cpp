#include "minkflow/flow_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "minkflow/errors.hpp"
#include "minkflow/isoperimetry.hpp"
#include "minkflow/spectral.hpp"

namespace minkflow {

void SolverConfig::validate() const {
  if (!(sigma > 0.0 && sigma <= 0.9)) throw std::invalid_argument("sigma must lie in (0, 0.9]");
  if (!(area_fraction > 0.0 && area_fraction < 1.0))
    throw std::invalid_argument("area_fraction must lie in (0, 1)");
  if (!(max_time > 0.0)) throw std::invalid_argument("max_time must be positive");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
  if (snapshot_every < 1) throw std::invalid_argument("snapshot_every must be positive");
  if (!(tol_close > 0.0)) throw std::invalid_argument("tol_close must be positive");
  if (!(tol_pos >= 0.0)) throw std::invalid_argument("tol_pos must be nonnegative");
  if (max_retries < 0) throw std::invalid_argument("max_retries must be nonnegative");
}

FlowState FlowState::initial(std::shared_ptr<const UnitBall> ball, std::vector<double> k0, Vec2 base,
                             double tol_close) {
  auto curve = ConvexCurve::from_curvature(std::move(ball), std::move(k0), base, tol_close);
  const auto& k = curve.curvature();
  const double k_min = *std::min_element(k.begin(), k.end());
  const double area = curve.area();
  return FlowState(std::move(curve), 0.0, 0.0, 0.0, k_min, area);
}

namespace {

template <class Stencil>
std::vector<double> apply_periodic(std::span<const double> u, Stencil st) {
  const int n = static_cast<int>(u.size());
  std::vector<double> out(u.size());
  auto at = [&](int i) { return u[(i + n) % n]; };
  for (int i : {0, 1, n - 2, n - 1}) out[i] = st(at(i - 2), at(i - 1), u[i], at(i + 1), at(i + 2));
  for (int i = 2; i < n - 2; ++i) out[i] = st(u[i - 2], u[i - 1], u[i], u[i + 1], u[i + 2]);
  return out;
}

}  // namespace

std::vector<double> periodic_d1(std::span<const double> u, double h) {
  const double scale = 1.0 / (12.0 * h);
  return apply_periodic(u, [scale](double um2, double um1, double, double up1, double up2) {
    return (-up2 + 8.0 * up1 - 8.0 * um1 + um2) * scale;
  });
}

std::vector<double> periodic_d2(std::span<const double> u, double h) {
  const double scale = 1.0 / (12.0 * h * h);
  return apply_periodic(u, [scale](double um2, double um1, double u0, double up1, double up2) {
    return (-up2 + 16.0 * up1 - 30.0 * u0 + 16.0 * um1 - um2) * scale;
  });
}

std::vector<double> pde_rhs(const UnitBall& ball, std::span<const double> k) {
  if (static_cast<int>(k.size()) != ball.size())
    throw std::invalid_argument("curvature sample count does not match the grid");
  const double h = ball.grid().spacing();
  const auto dk = periodic_d1(k, h);
  const auto d2k = periodic_d2(k, h);
  const auto& fc = ball.fcoef();
  const auto& gc = ball.gcoef();
  std::vector<double> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double k2 = k[i] * k[i];
    out[i] = fc[i] * k2 * d2k[i] + gc[i] * k2 * dk[i] + k2 * k[i];
  }
  return out;
}

double stable_time_step(const UnitBall& ball, std::span<const double> k, double sigma) {
  const double h = ball.grid().spacing();
  const auto& fc = ball.fcoef();
  double m = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) m = std::max(m, fc[i] * k[i] * k[i]);
  return sigma * h * h / m;
}

namespace {

struct Augmented {
  std::vector<double> k;
  double t1{0.0};
  double t2{0.0};
};

Augmented augmented_rhs(const UnitBall& ball, const std::vector<double>& k) {
  Augmented d;
  d.k = pde_rhs(ball, k);
  const double h = ball.grid().spacing();
  const int n = static_cast<int>(k.size());
  const double dk0 = (-k[2] + 8.0 * k[1] - 8.0 * k[n - 1] + k[n - 2]) / (12.0 * h);
  const double a0 = ball.a()[0];
  const double da0 = ball.da()[0];
  d.t1 = a0 * k[0];
  d.t2 = a0 * dk0 + da0 * k[0];
  return d;
}

std::vector<double> axpy(const std::vector<double>& y, double s, const std::vector<double>& d) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + s * d[i];
  return out;
}

void require_positive(const std::vector<double>& k) {
  for (double v : k) {
    if (!(v > 0.0) || !std::isfinite(v)) throw StepRejected("curvature lost positivity inside the step");
  }
}

}  // namespace

FlowState step(const FlowState& state, const SolverConfig& cfg) {
  const auto& curve = state.curve();
  const UnitBall& ball = curve.ball();
  const auto& k = curve.curvature();
  const double dt = stable_time_step(ball, k, cfg.sigma);

  const Augmented s1 = augmented_rhs(ball, k);
  const auto k2 = axpy(k, 0.5 * dt, s1.k);
  require_positive(k2);
  const Augmented s2 = augmented_rhs(ball, k2);
  const auto k3 = axpy(k, 0.5 * dt, s2.k);
  require_positive(k3);
  const Augmented s3 = augmented_rhs(ball, k3);
  const auto k4 = axpy(k, dt, s3.k);
  require_positive(k4);
  const Augmented s4 = augmented_rhs(ball, k4);

  std::vector<double> next(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    next[i] = k[i] + dt / 6.0 * (s1.k[i] + 2.0 * s2.k[i] + 2.0 * s3.k[i] + s4.k[i]);
  }
  const double t1 = state.t1_ + dt / 6.0 * (s1.t1 + 2.0 * s2.t1 + 2.0 * s3.t1 + s4.t1);
  const double t2 = state.t2_ + dt / 6.0 * (s1.t2 + 2.0 * s2.t2 + 2.0 * s3.t2 + s4.t2);

  for (double v : next) {
    if (!std::isfinite(v) || v < 0.5 * state.k_min0_)
      throw StepRejected("curvature fell below half its initial minimum");
  }
  try {
    auto nc = ConvexCurve::from_curvature(curve.ball_ptr(), std::move(next), curve.base(), cfg.tol_close);
    return FlowState(std::move(nc), state.t_ + dt, t1, t2, state.k_min0_, state.area0_);
  } catch (const ClosureViolation& e) {
    throw StepRejected(std::string("closure lost: ") + e.what());
  }
}

std::vector<Vec2> reconstruct_frame(const FlowState& state) {
  std::vector<Vec2> out = state.curve().vertices();
  const Vec2 shift = state.translation();
  for (auto& v : out) v = v - shift;
  return out;
}

std::vector<Vec2> frame_velocity(const FlowState& state) {
  const auto& ball = state.ball();
  const auto& k = state.curvature();
  const auto dk = periodic_d1(k, ball.grid().spacing());
  std::vector<Vec2> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double a = ball.a()[i];
    out[i] = -k[i] * ball.p()[i] - (a * a * dk[i]) * ball.q()[i];
  }
  return out;
}

double hausdorff_to_ball(const ConvexCurve& c) {
  const auto& ball = c.ball();
  const double s = std::sqrt(ball.area() / c.area());
  const Vec2 ctr = c.centroid();
  const auto& g = c.vertices();
  double d = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    const double h = dot(g[i] - ctr, radial(c.grid().angle(i)));
    d = std::max(d, std::abs(s * h - ball.a()[i]));
  }
  return d;
}

TraceRow trace_row(const FlowState& state, long step_index, double dt) {
  const auto& c = state.curve();
  const auto& ball = c.ball();
  const auto& k = c.curvature();
  const int n = c.size();
  const double h = c.grid().spacing();

  TraceRow r;
  r.step = step_index;
  r.t = state.time();
  r.dt = dt;
  r.q_length = c.q_length();
  r.area = c.area();
  r.iso_ratio = r.q_length * r.q_length / r.area;
  std::tie(r.r_sin, r.r_cos) = c.closure_residuals();

  std::vector<double> ak(n);
  std::vector<double> k2ds(n);
  for (int i = 0; i < n; ++i) {
    ak[i] = ball.a()[i] * k[i];
    k2ds[i] = k[i] * ball.bracket_pp()[i];
  }
  const auto dak = periodic_d1(ak, h);
  double j = 0.0, js = 0.0, w = 0.0;
  for (int i = 0; i < n; ++i) {
    j += ak[i] * ak[i] - dak[i] * dak[i];
    js += ak[i] * ak[i] + dak[i] * dak[i];
    w += ball.bracket_pp()[i] * std::log(k[i]);
  }
  r.k2_ds = periodic_integral(k2ds);
  r.j = j * h;
  r.j_scale = js * h;
  r.w = w * h;
  const auto [lo, hi] = std::minmax_element(k.begin(), k.end());
  r.k_min = *lo;
  r.k_max = *hi;
  return r;
}

SnapshotRecord snapshot_record(const FlowState& state, long step_index) {
  const TraceRow tr = trace_row(state, step_index, 0.0);
  const auto& c = state.curve();
  SnapshotRecord s;
  s.step = step_index;
  s.t = tr.t;
  s.k = c.curvature();
  s.base = c.base() - state.translation();
  s.q_length = tr.q_length;
  s.area = tr.area;
  s.iso_ratio = tr.iso_ratio;
  s.k2_ds = tr.k2_ds;
  s.r_sin = tr.r_sin;
  s.r_cos = tr.r_cos;
  s.j = tr.j;
  s.w = tr.w;
  s.k_min = tr.k_min;
  s.k_max = tr.k_max;
  const IsoReport rep = gage_check(c);
  s.k_star = rep.k_star;
  s.f_value = rep.f_value;
  s.hausdorff = hausdorff_to_ball(c);
  s.r_in = rep.r_in;
  s.r_out = rep.r_out;
  s.bonnesen_rin = rep.bonnesen_g_at_rin;
  s.bonnesen_rout = rep.bonnesen_g_at_rout;
  s.isoperimetric_slack = rep.isoperimetric_slack;
  s.gage_slack = rep.gage_slack;
  s.refined_gage_slack = rep.refined_gage_slack;
  s.median_bound_slack = rep.median_bound_slack;
  s.gage_product = s.q_length * rep.gage_slack;
  return s;
}

std::string to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::AreaThreshold: return "area_threshold";
    case FlowStatus::TimeLimit: return "time_limit";
    case FlowStatus::StepLimit: return "step_limit";
    case FlowStatus::Failed: return "failed";
  }
  return "unknown";
}

FlowResult run_flow(std::shared_ptr<const UnitBall> ball, std::vector<double> k0, const SolverConfig& cfg,
                    Vec2 base, const SnapshotObserver& observer) {
  cfg.validate();
  FlowResult result;
  const double area_p = ball->area();
  FlowState state = FlowState::initial(std::move(ball), std::move(k0), base, cfg.tol_close);
  const double target = cfg.area_fraction * state.initial_area();

  auto take_snapshot = [&](long idx) {
    result.series.snapshots.push_back(snapshot_record(state, idx));
    if (observer) observer(state, result.series.snapshots.back());
  };

  // Each rejection halves sigma for the rest of the run, at most max_retries times.
  SolverConfig attempt = cfg;
  long steps = 0;
  result.series.trace.push_back(trace_row(state, 0, 0.0));
  take_snapshot(0);
  long last_snapshot = 0;

  while (true) {
    if (state.curve().area() <= target) {
      result.status = FlowStatus::AreaThreshold;
      break;
    }
    if (state.time() >= cfg.max_time) {
      result.status = FlowStatus::TimeLimit;
      break;
    }
    if (steps >= cfg.max_steps) {
      result.status = FlowStatus::StepLimit;
      break;
    }
    std::optional<FlowState> next;
    std::string last_error;
    while (true) {
      try {
        next.emplace(step(state, attempt));
        break;
      } catch (const StepRejected& e) {
        last_error = e.what();
        if (result.retries >= cfg.max_retries) break;
        attempt.sigma *= 0.5;
        ++result.retries;
      }
    }
    if (!next) {
      result.status = FlowStatus::Failed;
      result.message = "step rejected with sigma halved " + std::to_string(cfg.max_retries) + " times at t = " +
                       std::to_string(state.time()) + ": " + last_error;
      break;
    }
    const double dt = next->time() - state.time();
    state = std::move(*next);
    ++steps;
    result.series.trace.push_back(trace_row(state, steps, dt));
    if (steps % cfg.snapshot_every == 0) {
      take_snapshot(steps);
      last_snapshot = steps;
    }
  }
  if (last_snapshot != steps) take_snapshot(steps);

  result.steps = steps;
  result.final_sigma = attempt.sigma;
  const double a_last = state.curve().area();
  result.vanishing_time_estimate = state.time() + a_last / (2.0 * area_p);
  return result;
}

EvolutionResiduals evolution_residuals(std::span<const TraceRow> rows, double area_p) {
  if (rows.size() < 3) throw std::invalid_argument("evolution residuals need at least three rows");
  EvolutionResiduals out;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const TraceRow& a = rows[i - 1];
    const TraceRow& b = rows[i];
    const TraceRow& c = rows[i + 1];
    const double h1 = b.t - a.t;
    const double h2 = c.t - b.t;
    if (!(h1 > 0.0 && h2 > 0.0)) throw std::invalid_argument("trace times must increase strictly");
    const double wa = -h2 / (h1 * (h1 + h2));
    const double wb = (h2 - h1) / (h1 * h2);
    const double wc = h1 / (h2 * (h1 + h2));
    auto deriv = [&](auto field) { return wa * field(a) + wb * field(b) + wc * field(c); };

    const double da = deriv([](const TraceRow& r) { return r.area; });
    const double dl = deriv([](const TraceRow& r) { return r.q_length; });
    const double diso = deriv([](const TraceRow& r) { return r.iso_ratio; });
    const double dw = deriv([](const TraceRow& r) { return r.w; });

    const double iso_scale = 2.0 * b.q_length / b.area * b.k2_ds;
    const double iso_pred = -iso_scale + 2.0 * area_p * b.q_length * b.q_length / (b.area * b.area);

    out.area = std::max(out.area, std::abs(da + 2.0 * area_p) / (2.0 * area_p));
    out.length = std::max(out.length, std::abs(dl + b.k2_ds) / b.k2_ds);
    out.iso = std::max(out.iso, std::abs(diso - iso_pred) / iso_scale);
    out.entropy = std::max(out.entropy, std::abs(dw - b.j) / b.j_scale);
    ++out.samples;
  }
  return out;
}

}  // namespace minkflow
