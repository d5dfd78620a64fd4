#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "minkflow/convex_curve.hpp"
#include "minkflow/flow_solver.hpp"
#include "minkflow/isoperimetry.hpp"
#include "minkflow/support_function.hpp"
#include "minkflow/unit_ball.hpp"

using namespace minkflow;

namespace {

std::shared_ptr<const UnitBall> make_ball(int n) {
  const std::vector<Harmonic> h{{0, 1.0, 0.0}, {2, 0.1, -0.05}, {4, 0.02, 0.01}};
  return std::make_shared<const UnitBall>(UnitBall::build(SupportFunction::from_harmonics(h), AngleGrid(n)));
}

// Even harmonics only, so the curve closes on a centrally symmetric ball.
std::vector<double> make_curvature(int n) {
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    k[i] = 1.0 / (1.0 + 0.2 * std::cos(2 * t) + 0.05 * std::sin(4 * t));
  }
  return k;
}

void BM_PdeRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ball = make_ball(n);
  const auto k = make_curvature(n);
  for (auto _ : state) benchmark::DoNotOptimize(pde_rhs(*ball, k));
  state.SetComplexityN(n);
}
BENCHMARK(BM_PdeRhs)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

void BM_FromCurvature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ball = make_ball(n);
  const auto k = make_curvature(n);
  for (auto _ : state) benchmark::DoNotOptimize(ConvexCurve::from_curvature(ball, k));
}
BENCHMARK(BM_FromCurvature)->RangeMultiplier(2)->Range(128, 2048);

void BM_Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = FlowState::initial(make_ball(n), make_curvature(n), {0.0, 0.0});
  const SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(step(s, cfg));
}
BENCHMARK(BM_Step)->RangeMultiplier(2)->Range(128, 1024);

void BM_InscribedCircumscribed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = ConvexCurve::from_curvature(make_ball(n), make_curvature(n));
  for (auto _ : state) benchmark::DoNotOptimize(inscribed_circumscribed(c));
}
BENCHMARK(BM_InscribedCircumscribed)->Arg(256)->Arg(512);

void BM_GageCheck(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = ConvexCurve::from_curvature(make_ball(n), make_curvature(n));
  for (auto _ : state) benchmark::DoNotOptimize(gage_check(c));
}
BENCHMARK(BM_GageCheck)->Arg(256)->Arg(512);

void BM_SnapshotRecord(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = FlowState::initial(make_ball(n), make_curvature(n), {0.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(snapshot_record(s, 0));
}
BENCHMARK(BM_SnapshotRecord)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
