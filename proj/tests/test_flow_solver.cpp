#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fixtures.hpp"
#include "minkflow/errors.hpp"
#include "minkflow/flow_solver.hpp"

using namespace minkflow;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sampled(int n, auto f) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = f(2.0 * kPi * i / n);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(PeriodicDifferences, FourthOrderConvergence) {
  auto err = [](int n) {
    const double h = 2.0 * kPi / n;
    const auto u = sampled(n, [](double t) { return std::sin(3 * t) + 0.5 * std::cos(5 * t); });
    const auto d1 = periodic_d1(u, h);
    const auto d2 = periodic_d2(u, h);
    const auto e1 = sampled(n, [](double t) { return 3 * std::cos(3 * t) - 2.5 * std::sin(5 * t); });
    const auto e2 = sampled(n, [](double t) { return -9 * std::sin(3 * t) - 12.5 * std::cos(5 * t); });
    return std::pair{max_abs_diff(d1, e1), max_abs_diff(d2, e2)};
  };
  const auto [a1, a2] = err(64);
  const auto [b1, b2] = err(128);
  EXPECT_NEAR(a1 / b1, 16.0, 1.0);
  EXPECT_NEAR(a2 / b2, 16.0, 1.0);
}

TEST(PdeRhs, ConstantCurvatureGivesCube) {
  for (const auto& h : {fixture::euclidean(), fixture::cos2(), fixture::mixed()}) {
    auto b = fixture::ball(h, 64);
    for (double v : pde_rhs(*b, std::vector<double>(64, 1.7))) EXPECT_NEAR(v, 1.7 * 1.7 * 1.7, 1e-12);
  }
}

TEST(PdeRhs, EuclideanMatchesClosedForm) {
  auto b = fixture::ball(fixture::euclidean(), 256);
  const auto k = sampled(256, [](double t) { return 1.0 + 0.1 * std::cos(2 * t); });
  const auto exact = sampled(256, [](double t) {
    const double k = 1.0 + 0.1 * std::cos(2 * t);
    return k * k * (-0.4 * std::cos(2 * t)) + k * k * k;
  });
  EXPECT_LE(max_abs_diff(pde_rhs(*b, k), exact), 1e-7);
}

TEST(PdeRhs, GeneralBallMatchesClosedForm) {
  auto kf = [](double t) { return 1.0 + 0.2 * std::cos(2 * t) + 0.05 * std::sin(3 * t); };
  auto dk = [](double t) { return -0.4 * std::sin(2 * t) + 0.15 * std::cos(3 * t); };
  auto d2k = [](double t) { return -0.8 * std::cos(2 * t) - 0.45 * std::sin(3 * t); };
  auto da = [](double t) {
    return -0.2 * std::sin(2 * t) - 0.1 * std::cos(2 * t) - 0.08 * std::sin(4 * t) + 0.04 * std::cos(4 * t);
  };
  auto err = [&](int n) {
    auto b = fixture::ball(fixture::mixed(), n);
    const auto exact = sampled(n, [&](double t) {
      const double a = fixture::mixed_a(t), rs = fixture::mixed_rs(t), k = kf(t);
      return a / rs * k * k * d2k(t) + 2.0 * da(t) / rs * k * k * dk(t) + k * k * k;
    });
    return max_abs_diff(pde_rhs(*b, sampled(n, kf)), exact);
  };
  const double e256 = err(256), e512 = err(512);
  EXPECT_LE(e512, 1e-7);
  EXPECT_NEAR(e256 / e512, 16.0, 1.5);
}

TEST(StableTimeStep, ShrinksAsCurvatureGrows) {
  auto b = fixture::ball(fixture::cos2(), 128);
  const auto k = sampled(128, [](double t) { return 1.0 + 0.3 * std::cos(4 * t); });
  double prev = stable_time_step(*b, k, 0.5);
  for (double s : {1.5, 2.0, 4.0}) {
    std::vector<double> ks = k;
    for (auto& v : ks) v *= s;
    const double dt = stable_time_step(*b, ks, 0.5);
    EXPECT_LT(dt, prev);
    prev = dt;
  }
}

TEST(Step, ShrinkingCircleExactSolution) {
  auto b = fixture::ball(fixture::euclidean(), 256);
  SolverConfig cfg;
  cfg.sigma = 0.5;
  auto s = FlowState::initial(b, std::vector<double>(256, 1.0));
  while (s.time() < 0.18) {
    const FlowState next = step(s, cfg);
    if (next.time() > 0.18) break;
    s = next;
  }
  EXPECT_GT(s.time(), 0.179);
  const double exact = 1.0 / std::sqrt(1.0 - 2.0 * s.time());
  for (double k : s.curvature()) EXPECT_NEAR(k, exact, 1e-8);
  // Extrapolating the exact slope k^3 over the remaining gap reaches 1.25.
  const double gap = 0.18 - s.time();
  EXPECT_NEAR(exact + gap * exact * exact * exact, 1.25, 1e-6);
}

TEST(Step, PCircleAreaLaw) {
  auto b = fixture::ball(fixture::cos2(), 256);
  const double r = 1.2;
  auto s = FlowState::initial(b, std::vector<double>(256, 1.0 / r));
  SolverConfig cfg;
  for (int i = 0; i < 300; ++i) s = step(s, cfg);
  EXPECT_NEAR(s.curve().area(), b->area() * (r * r - 2.0 * s.time()), 1e-10);
}

TEST(Step, RejectsClosureAndPositivityFailures) {
  auto b = fixture::ball(fixture::cos2(), 128);
  const auto k = sampled(128, [](double t) { return 1.0 + 0.3 * std::cos(4 * t); });
  const auto s = FlowState::initial(b, k);
  SolverConfig tight;
  tight.tol_close = 1e-300;
  EXPECT_THROW((void)step(s, tight), StepRejected);
  SolverConfig wild;
  wild.sigma = 50.0;
  EXPECT_THROW((void)step(s, wild), StepRejected);
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.sigma = 0.95;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.area_fraction = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.snapshot_every = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(RunFlow, CircleVanishingTime) {
  auto b = fixture::ball(fixture::euclidean(), 256);
  SolverConfig cfg;
  cfg.sigma = 0.5;
  cfg.snapshot_every = 2000;
  const auto res = run_flow(b, std::vector<double>(256, 1.0), cfg);
  EXPECT_EQ(res.status, FlowStatus::AreaThreshold);
  EXPECT_NEAR(res.vanishing_time_estimate, 0.5, 1e-5);
  const auto ev = evolution_residuals(res.series.trace, b->area());
  EXPECT_LE(ev.area, 1e-6);
  EXPECT_LE(ev.length, 1e-6);
  EXPECT_LE(ev.iso, 1e-6);
}

TEST(RunFlow, PCircleVanishingTime) {
  auto b = fixture::ball(fixture::cos2(), 256);
  SolverConfig cfg;
  cfg.snapshot_every = 5000;
  const auto res = run_flow(b, std::vector<double>(256, 1.0), cfg);
  EXPECT_NEAR(res.vanishing_time_estimate, 0.5, 1e-4);
  for (const auto& s : res.series.snapshots) EXPECT_LE(s.hausdorff, 1e-10);
}

TEST(RunFlow, AsymmetricCurveConservesClosureAndMonotoneQuantities) {
  auto b = fixture::ball(fixture::mixed(), 128);
  SolverConfig cfg;
  cfg.snapshot_every = 400;
  cfg.area_fraction = 0.05;
  const auto res = run_flow(b, fixture::curvature_samples(fixture::skewed(), 128), cfg);
  ASSERT_EQ(res.status, FlowStatus::AreaThreshold) << res.message;
  const auto& tr = res.series.trace;
  for (std::size_t i = 1; i < tr.size(); ++i) {
    EXPECT_LE(std::max(std::abs(tr[i].r_sin), std::abs(tr[i].r_cos)), 1e-6 * tr[i].q_length);
    EXPECT_GE(tr[i].j, tr[i - 1].j - 1e-8 * (1.0 + std::abs(tr[i - 1].j)));
    EXPECT_LE(tr[i].iso_ratio, tr[i - 1].iso_ratio + 1e-10);
    EXPECT_GE(tr[i].k_min, tr[0].k_min - 1e-8);
  }
  const auto ev = evolution_residuals(tr, b->area());
  EXPECT_LE(ev.entropy, 1e-3);
  EXPECT_LE(ev.area, 1e-4);
  EXPECT_LT(res.series.snapshots.back().hausdorff, res.series.snapshots.front().hausdorff);
}

TEST(RunFlow, RetryExhaustionIsReportedWithSeries) {
  auto b = fixture::ball(fixture::cos2(), 64);
  SolverConfig cfg;
  cfg.max_retries = 0;
  cfg.tol_close = 1e-6;
  cfg.sigma = 0.9;
  auto k = sampled(64, [](double t) { return 1.0 + 0.4 * std::cos(4 * t); });
  const auto res = run_flow(b, k, cfg);
  ASSERT_EQ(res.status, FlowStatus::Failed);
  EXPECT_NE(res.message.find("rejected"), std::string::npos);
  EXPECT_EQ(res.retries, 0);
  EXPECT_EQ(res.final_sigma, cfg.sigma);
  EXPECT_EQ(res.series.trace.size(), static_cast<std::size_t>(res.steps) + 1);
  ASSERT_GE(res.series.snapshots.size(), 2u);
  EXPECT_EQ(res.series.snapshots.back().step, res.steps);
  EXPECT_THROW((void)run_flow(b, k, SolverConfig{.sigma = 2.0}), std::invalid_argument);
}

TEST(RunFlow, RejectionLowersSigmaForTheRestOfTheRun) {
  auto b = fixture::ball(fixture::cos2(), 64);
  SolverConfig cfg;
  cfg.sigma = 0.9;
  cfg.tol_close = 1e-6;
  cfg.area_fraction = 0.2;
  auto k = sampled(64, [](double t) { return 1.0 + 0.4 * std::cos(4 * t); });
  const auto res = run_flow(b, k, cfg);
  ASSERT_EQ(res.status, FlowStatus::AreaThreshold) << res.message;
  EXPECT_GE(res.retries, 1);
  EXPECT_LT(res.final_sigma, cfg.sigma);
  EXPECT_EQ(res.final_sigma, cfg.sigma * std::pow(0.5, res.retries));
  for (const auto& row : res.series.trace) EXPECT_GT(row.k_min, 0.5);
}

TEST(Frame, MatchesCurveAtStartAndCircleCenterStaysFixed) {
  auto b = fixture::ball(fixture::euclidean(), 128);
  auto s = FlowState::initial(b, std::vector<double>(128, 1.0), {0.0, 0.0});
  const auto f0 = reconstruct_frame(s);
  for (int i = 0; i < 128; ++i) EXPECT_NEAR((f0[i] - s.curve().vertices()[i]).norm(), 0.0, 1e-15);
  // Unit circle through the origin at theta = 0 has its center at (-1, 0).
  SolverConfig cfg;
  for (int i = 0; i < 500; ++i) s = step(s, cfg);
  const auto f = reconstruct_frame(s);
  const double radius = std::sqrt(1.0 - 2.0 * s.time());
  for (const auto& v : f) EXPECT_NEAR((v - Vec2{-1.0, 0.0}).norm(), radius, 1e-10);
}

TEST(Frame, VelocityForwardDifferenceIsFirstOrder) {
  auto b = fixture::ball(fixture::mixed(), 128);
  const auto s0 = FlowState::initial(b, fixture::curvature_samples(fixture::skewed(), 128), {0.1, 0.2});
  auto err = [&](double sigma) {
    SolverConfig cfg;
    cfg.sigma = sigma;
    const auto s1 = step(s0, cfg);
    const auto f0 = reconstruct_frame(s0), f1 = reconstruct_frame(s1);
    const auto v = frame_velocity(s0);
    const double dt = s1.time();
    double e = 0.0;
    for (std::size_t i = 0; i < f0.size(); ++i) e = std::max(e, ((f1[i] - f0[i]) / dt - v[i]).norm());
    return e;
  };
  const double e1 = err(0.2), e2 = err(0.1);
  EXPECT_NEAR(e1 / e2, 2.0, 0.1);
}

TEST(EvolutionResiduals, NeedsThreeRows) {
  std::vector<TraceRow> rows(2);
  rows[1].t = 1.0;
  EXPECT_THROW((void)evolution_residuals(rows, 1.0), std::invalid_argument);
}

TEST(Hausdorff, PCircleAnyRadiusIsZero) {
  auto b = fixture::ball(fixture::mixed(), 256);
  for (double r : {0.3, 1.0, 4.0}) {
    const auto c = ConvexCurve::from_curvature(b, std::vector<double>(256, 1.0 / r), {1.0, 1.0});
    EXPECT_NEAR(hausdorff_to_ball(c), 0.0, 1e-12);
  }
  EXPECT_GT(hausdorff_to_ball(fixture::make(fixture::skewed(), 256)), 1e-3);
}
