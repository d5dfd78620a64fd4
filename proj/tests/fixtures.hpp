#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include "minkflow/convex_curve.hpp"
#include "minkflow/support_function.hpp"
#include "minkflow/unit_ball.hpp"
#include "oracles.hpp"

namespace fixture {

using minkflow::Harmonic;

/// A ball and a curve given in closed form: a(t), a + a'' and mu = 1 / k.
struct SmoothCurve {
  std::vector<Harmonic> ball;
  oracle::Fn a;
  oracle::Fn radius_sum;
  oracle::Fn mu;
};

inline std::shared_ptr<const minkflow::UnitBall> ball(const std::vector<Harmonic>& h, int n) {
  return std::make_shared<const minkflow::UnitBall>(
      minkflow::UnitBall::build(minkflow::SupportFunction::from_harmonics(h), minkflow::AngleGrid(n)));
}

inline std::vector<Harmonic> euclidean() { return {{0, 1.0, 0.0}}; }
inline std::vector<Harmonic> cos2() { return {{0, 1.0, 0.0}, {2, 0.2, 0.0}}; }
inline std::vector<Harmonic> mixed() { return {{0, 1.0, 0.0}, {2, 0.1, -0.05}, {4, 0.02, 0.01}}; }

inline double cos2_a(double t) { return 1.0 + 0.2 * std::cos(2 * t); }
inline double cos2_rs(double t) { return 1.0 - 0.6 * std::cos(2 * t); }

inline double mixed_a(double t) {
  return 1.0 + 0.1 * std::cos(2 * t) - 0.05 * std::sin(2 * t) + 0.02 * std::cos(4 * t) + 0.01 * std::sin(4 * t);
}
inline double mixed_rs(double t) {
  return 1.0 - 3.0 * (0.1 * std::cos(2 * t) - 0.05 * std::sin(2 * t)) -
         15.0 * (0.02 * std::cos(4 * t) + 0.01 * std::sin(4 * t));
}

/// Euclidean ellipse with semi-axes 1 (x) and 2 (y): support h = sqrt(cos^2 + 4 sin^2),
/// radius of curvature 4 / h^3.
inline SmoothCurve ellipse() {
  return {euclidean(), [](double) { return 1.0; }, [](double) { return 1.0; },
          [](double t) {
            const double h = std::sqrt(std::cos(t) * std::cos(t) + 4.0 * std::sin(t) * std::sin(t));
            return 4.0 / (h * h * h);
          }};
}

/// Curve without central symmetry on the mixed ball. The first harmonic of mu
/// is solved for so that the closure moments of (a + a'') mu vanish.
inline SmoothCurve skewed() {
  auto raw = [](double t) { return 1.0 + 0.1 * std::cos(2 * t) + 0.06 * std::sin(3 * t) - 0.04 * std::cos(5 * t); };
  auto m = [&](auto f) { return oracle::periodic_quad(f, 4096); };
  const double m11 = m([](double t) { return mixed_rs(t) * std::cos(t) * std::cos(t); });
  const double m12 = m([](double t) { return mixed_rs(t) * std::cos(t) * std::sin(t); });
  const double m22 = m([](double t) { return mixed_rs(t) * std::sin(t) * std::sin(t); });
  const double b1 = -m([&](double t) { return mixed_rs(t) * raw(t) * std::cos(t); });
  const double b2 = -m([&](double t) { return mixed_rs(t) * raw(t) * std::sin(t); });
  const double det = m11 * m22 - m12 * m12;
  const double alpha = (b1 * m22 - b2 * m12) / det;
  const double beta = (m11 * b2 - m12 * b1) / det;
  return {mixed(), mixed_a, mixed_rs,
          [=](double t) { return raw(t) + alpha * std::cos(t) + beta * std::sin(t); }};
}

inline std::vector<double> curvature_samples(const SmoothCurve& s, int n) {
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = 1.0 / s.mu(2.0 * std::numbers::pi * i / n);
  return k;
}

inline minkflow::ConvexCurve make(const SmoothCurve& s, int n, minkflow::Vec2 base = {}) {
  return minkflow::ConvexCurve::from_curvature(ball(s.ball, n), curvature_samples(s, n), base);
}

}  // namespace fixture
