#include "minkflow_app/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <utility>

#include "minkflow/convex_curve.hpp"
#include "minkflow/errors.hpp"
#include "minkflow/flow_solver.hpp"
#include "minkflow/isoperimetry.hpp"

namespace minkflow::app {

namespace {

std::string fmt(const char* f, auto... args) {
  std::array<char, 256> buf{};
  std::snprintf(buf.data(), buf.size(), f, args...);
  return buf.data();
}

struct FlowRun {
  std::shared_ptr<const UnitBall> ball;
  FlowResult result;
  double seconds{0.0};
};

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& opts) : opts_(opts) {}

  int grid(int fallback) const { return opts_.grid.value_or(fallback); }

  std::shared_ptr<const UnitBall> ball(int which, int n) const {
    const auto h = suite_ball_harmonics(which);
    return make_ball(h, n, opts_.area_offset);
  }

  FlowRun area_law_run(int n) const {
    FlowRun run;
    run.ball = ball(1, n);
    const std::array<Harmonic, 2> k0h{{{0, 1.0, 0.0}, {4, 0.3, 0.0}}};
    SolverConfig cfg;
    cfg.area_fraction = 0.01;
    cfg.snapshot_every = 200;
    const auto t0 = std::chrono::steady_clock::now();
    run.result = run_flow(run.ball, sample_harmonics(k0h, run.ball->grid()), cfg);
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
  }

  /// The run shared by A2, A3, A4, A6 and A7.
  const FlowRun& shared_run() {
    if (!shared_) shared_ = std::make_unique<FlowRun>(area_law_run(grid(256)));
    return *shared_;
  }

  /// Ten curves over three balls shared by A5 and A6.
  const std::vector<ConvexCurve>& random_curves() {
    if (curves_.empty()) {
      const int n = grid(512);
      UniformSource rng(20240917);
      for (int i = 0; i < 10; ++i) {
        auto b = ball(i % 3, n);
        auto k = random_admissible_curvature(*b, rng);
        const Vec2 base{rng(-2.0, 2.0), rng(-2.0, 2.0)};
        curves_.push_back(ConvexCurve::from_curvature(b, std::move(k), base));
      }
    }
    return curves_;
  }

 private:
  AcceptanceOptions opts_;
  std::unique_ptr<FlowRun> shared_;
  std::vector<ConvexCurve> curves_;
};

bool require_completed(const FlowRun& run, std::string& detail) {
  if (run.result.status == FlowStatus::AreaThreshold) return true;
  detail = "flow stopped early: " + to_string(run.result.status) + " " + run.result.message;
  return false;
}

CriterionResult a1(Suite& s) {
  CriterionResult r;
  const int n = s.grid(256);
  auto ball = s.ball(0, n);
  SolverConfig cfg;
  cfg.sigma = 0.5;
  cfg.area_fraction = 0.05;
  cfg.snapshot_every = 1000;
  const auto t0 = std::chrono::steady_clock::now();
  FlowRun run{ball, run_flow(ball, std::vector<double>(n, 1.0), cfg), 0.0};
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!require_completed(run, r.detail)) return r;

  double area_err = 0.0, k_err = 0.0;
  for (const auto& row : run.result.series.trace) {
    const double exact_a = std::numbers::pi * (1.0 - 2.0 * row.t);
    const double exact_k = 1.0 / std::sqrt(1.0 - 2.0 * row.t);
    area_err = std::max(area_err, std::abs(row.area - exact_a) / exact_a);
    k_err = std::max({k_err, std::abs(row.k_min - exact_k), std::abs(row.k_max - exact_k)});
  }
  const double tv_err = std::abs(run.result.vanishing_time_estimate - 0.5);
  r.passed = area_err <= 1e-5 && k_err <= 1e-6 && tv_err <= 1e-5 && run.seconds <= 5.0;
  r.detail = fmt("area rel err %.2e, k err %.2e, t_V_est %.9f, %.2f s", area_err, k_err,
                 run.result.vanishing_time_estimate, run.seconds);
  return r;
}

CriterionResult a2(Suite& s) {
  CriterionResult r;
  const auto& run = s.shared_run();
  if (!require_completed(run, r.detail)) return r;
  const auto res = evolution_residuals(run.result.series.trace, run.ball->area());
  r.passed = res.area <= 1e-4;
  r.detail = fmt("max rel dA/dt residual %.2e over %d rows (%ld steps, %.2f s)", res.area, res.samples,
                 run.result.steps, run.seconds);
  return r;
}

CriterionResult a3(Suite& s) {
  CriterionResult r;
  const auto& coarse = s.shared_run();
  if (!require_completed(coarse, r.detail)) return r;
  const FlowRun fine = s.area_law_run(2 * coarse.ball->size());
  if (!require_completed(fine, r.detail)) return r;
  const double e1 = evolution_residuals(coarse.result.series.trace, coarse.ball->area()).length;
  const double e2 = evolution_residuals(fine.result.series.trace, fine.ball->area()).length;
  r.passed = e1 <= 1e-3 && e2 <= 0.5 * e1;
  r.detail = fmt("dL/dt residual %.2e at N=%d, %.2e at N=%d (ratio %.1f)", e1, coarse.ball->size(), e2,
                 fine.ball->size(), e1 / e2);
  return r;
}

CriterionResult a4(Suite& s) {
  CriterionResult r;
  const auto& run = s.shared_run();
  if (!require_completed(run, r.detail)) return r;
  const auto& tr = run.result.series.trace;
  double worst_rise = 0.0;
  for (std::size_t i = 1; i < tr.size(); ++i) {
    worst_rise = std::max(worst_rise, tr[i].iso_ratio - tr[i - 1].iso_ratio);
  }
  const double floor = 4.0 * run.ball->area();
  const double final_ratio = tr.back().iso_ratio / floor;
  r.passed = worst_rise <= 1e-10 && final_ratio >= 1.0 && final_ratio <= 1.02;
  r.detail = fmt("largest per-step rise %.2e, final iso / 4A(P) = %.8f", worst_rise, final_ratio);
  return r;
}

CriterionResult a5(Suite& s) {
  CriterionResult r;
  double worst = 0.0;
  for (const auto& c : s.random_curves()) {
    const auto id = prop1_identities(c);
    worst = std::max({worst, std::abs(id.i_a), std::abs(id.i_b), std::abs(id.i_c)});
  }
  r.passed = worst <= 1e-8;
  r.detail = fmt("max |I| %.2e over %zu curves", worst, s.random_curves().size());
  return r;
}

CriterionResult a6(Suite& s) {
  CriterionResult r;
  double iso = INFINITY, bon = INFINITY, gage = INFINITY, med = INFINITY;
  for (const auto& c : s.random_curves()) {
    const IsoReport rep = gage_check(c);
    iso = std::min(iso, rep.isoperimetric_slack);
    bon = std::min({bon, rep.bonnesen_g_at_rin, rep.bonnesen_g_at_rout});
    gage = std::min(gage, rep.refined_gage_slack);
    med = std::min(med, rep.median_bound_slack);
  }
  const auto& run = s.shared_run();
  for (const auto& snap : run.result.series.snapshots) {
    iso = std::min(iso, snap.isoperimetric_slack);
    bon = std::min({bon, snap.bonnesen_rin, snap.bonnesen_rout});
    gage = std::min(gage, snap.refined_gage_slack);
    med = std::min(med, snap.median_bound_slack);
  }
  const double tol = -1e-8;
  r.passed = iso >= tol && bon >= tol && gage >= tol && med >= tol;
  r.detail = fmt("min slacks: isoperimetric %.2e, Bonnesen %.2e, refined Gage %.2e, median bound %.2e "
                 "(%zu curves, %zu snapshots)",
                 iso, bon, gage, med, s.random_curves().size(), run.result.series.snapshots.size());
  return r;
}

CriterionResult a7(Suite& s) {
  CriterionResult r;
  const auto& run = s.shared_run();
  if (!require_completed(run, r.detail)) return r;
  const auto& tr = run.result.series.trace;
  double closure = 0.0, j_drop = 0.0, k_dip = 0.0;
  const double k_min0 = tr.front().k_min;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    closure = std::max(closure, std::max(std::abs(tr[i].r_sin), std::abs(tr[i].r_cos)) / tr[i].q_length);
    k_dip = std::max(k_dip, k_min0 - tr[i].k_min);
    if (i > 0) j_drop = std::max(j_drop, (tr[i - 1].j - tr[i].j) / (1.0 + std::abs(tr[i - 1].j)));
  }
  r.passed = closure <= 1e-6 && j_drop <= 1e-8 && k_dip <= 1e-8;
  r.detail = fmt("closure / L %.2e, worst relative J drop %.2e, k_min dip %.2e", closure, j_drop, k_dip);
  return r;
}

CriterionResult a8(Suite& s) {
  CriterionResult r;
  auto ball = s.ball(1, s.grid(256));
  UniformSource rng(77);
  auto k0 = random_admissible_curvature(*ball, rng);
  SolverConfig cfg;
  cfg.sigma = 0.25;
  const FlowState s0 = FlowState::initial(ball, std::move(k0), {0.3, -0.2});
  const FlowState s1 = step(s0, cfg);
  const FlowState s2 = step(s1, cfg);
  const auto f0 = reconstruct_frame(s0);
  const auto f1 = reconstruct_frame(s1);
  const auto f2 = reconstruct_frame(s2);
  const auto v0 = frame_velocity(s0);
  const auto v1 = frame_velocity(s1);
  const double h1 = s1.time() - s0.time();
  const double h2 = s2.time() - s1.time();
  const double w0 = -h2 / (h1 * (h1 + h2));
  const double w1 = (h2 - h1) / (h1 * h2);
  const double w2 = h1 / (h2 * (h1 + h2));
  double central = 0.0, forward = 0.0;
  for (std::size_t i = 0; i < f0.size(); ++i) {
    central = std::max(central, (w0 * f0[i] + w1 * f1[i] + w2 * f2[i] - v1[i]).norm());
    forward = std::max(forward, ((f1[i] - f0[i]) / h1 - v0[i]).norm());
  }
  const double dt = std::max(h1, h2);
  r.passed = central <= 5.0 * dt;
  r.detail = fmt("central-difference error %.2e vs 5 dt = %.2e (forward difference %.2e)", central,
                 5.0 * dt, forward);
  return r;
}

CriterionResult a9(Suite& s) {
  CriterionResult r;
  auto ball = s.ball(1, s.grid(256));
  const std::array<Harmonic, 2> kh{{{0, 1.0, 0.0}, {4, 0.3, 0.0}}};
  const auto c = ConvexCurve::from_curvature(ball, sample_harmonics(kh, ball->grid()));
  const auto m = metrics(c);
  double worst = 0.0;
  for (double f : {0.1, 0.5, 0.9}) {
    const double rr = f * m.mu0;
    const double predicted = c.q_length() - 2.0 * ball->area() * rr;
    worst = std::max(worst, std::abs(inner_parallel(c, rr).q_length() - predicted));
  }
  const double integral = area_from_parallel_lengths(c, m.r_in);
  const double area_err = std::abs(integral - c.area()) / c.area();
  r.passed = worst <= 1e-8 && area_err <= 1e-4;
  r.detail = fmt("max |L(r) - (L - 2A(P) r)| %.2e, integral vs area rel err %.2e (r_in %.6f, mu0 %.6f)", worst,
                 area_err, m.r_in, m.mu0);
  return r;
}

}  // namespace

std::vector<Harmonic> suite_ball_harmonics(int which) {
  switch (which) {
    case 0: return {{0, 1.0, 0.0}};
    case 1: return {{0, 1.0, 0.0}, {2, 0.2, 0.0}};
    default: return {{0, 1.0, 0.0}, {2, 0.1, -0.05}, {4, 0.02, 0.01}};
  }
}

std::shared_ptr<const UnitBall> make_ball(std::span<const Harmonic> harmonics, int n, double area_offset) {
  auto ball = UnitBall::build(SupportFunction::from_harmonics(harmonics), AngleGrid(n));
  if (area_offset != 0.0) ball = ball.with_area_offset(area_offset);
  return std::make_shared<const UnitBall>(std::move(ball));
}

std::vector<double> random_admissible_curvature(const UnitBall& ball, UniformSource& rng) {
  const int n = ball.size();
  const auto& rs = ball.radius_sum();
  const auto& e = ball.normals();
  while (true) {
    const double scale = rng(0.5, 2.0);
    std::vector<Harmonic> h{{0, 1.0, 0.0}};
    for (int m = 2; m <= 5; ++m) {
      const double amp = 0.12 / m;
      h.push_back({m, rng(-amp, amp), rng(-amp, amp)});
    }
    auto mu = sample_harmonics(h, ball.grid());
    double m11 = 0, m12 = 0, m22 = 0, b1 = 0, b2 = 0;
    for (int i = 0; i < n; ++i) {
      const double c = e[i].x, s = e[i].y;
      m11 += rs[i] * c * c;
      m12 += rs[i] * c * s;
      m22 += rs[i] * s * s;
      b1 -= rs[i] * mu[i] * c;
      b2 -= rs[i] * mu[i] * s;
    }
    const double det = m11 * m22 - m12 * m12;
    const double alpha = (b1 * m22 - b2 * m12) / det;
    const double beta = (m11 * b2 - m12 * b1) / det;
    std::vector<double> k(n);
    bool positive = true;
    for (int i = 0; i < n; ++i) {
      const double v = scale * (mu[i] + alpha * e[i].x + beta * e[i].y);
      positive = positive && v > 0.05 * scale;
      k[i] = 1.0 / v;
    }
    if (positive) return k;
  }
}

std::string format_result(const CriterionResult& r) {
  return fmt("%-3s %-4s %-30s %6.2fs  ", r.id.c_str(), r.passed ? "PASS" : "FAIL", r.title.c_str(), r.seconds) +
         r.detail;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* out) {
  Suite suite(opts);
  struct Entry {
    const char* id;
    const char* title;
    CriterionResult (*check)(Suite&);
  };
  const std::array<Entry, 9> entries{{
      {"A1", "Euclidean reduction", a1},
      {"A2", "Area law", a2},
      {"A3", "Length law and refinement", a3},
      {"A4", "Isoperimetric convergence", a4},
      {"A5", "Integral identities", a5},
      {"A6", "Inequality suite", a6},
      {"A7", "Conservation and monotonicity", a7},
      {"A8", "Frame velocity", a8},
      {"A9", "Offset laws", a9},
  }};
  std::vector<CriterionResult> results;
  for (const Entry& entry : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = entry.check(suite);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.id = entry.id;
    r.title = entry.title;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out) *out << format_result(r) << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace minkflow::app
