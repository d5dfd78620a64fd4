#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

#include "minkflow/vec2.hpp"

namespace minkflow::detail {

struct MaximinResult {
  Vec2 center;
  double value{0.0};
  int iterations{0};
  bool converged{false};
};

/// Solves max over (c, r) of r subject to r + [c, q_i] <= f_i for all i, where
/// the q_i wind once around the origin. Runs the primal simplex on the dual
/// problem min sum y_i f_i, sum y_i = 1, sum y_i q_i = 0, y >= 0, whose basis
/// has three columns; the simplex multipliers are (r, c).
inline MaximinResult maximin_lp(std::span<const double> f, std::span<const Vec2> q) {
  const int n = static_cast<int>(f.size());
  if (n < 3 || static_cast<int>(q.size()) != n) throw std::invalid_argument("maximin_lp: need matching sizes >= 3");
  auto column = [&](int j) { return Eigen::Vector3d(1.0, q[j].y, -q[j].x); };

  // Initial basis: directions nearest three angles 120 degrees apart.
  int basis[3] = {0, 0, 0};
  const double base_angle = std::atan2(q[0].y, q[0].x);
  for (int k = 1; k < 3; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      const double d = std::remainder(std::atan2(q[j].y, q[j].x) - base_angle - k * 2.0 * std::numbers::pi / 3.0,
                                      2.0 * std::numbers::pi);
      if (std::abs(d) < best) {
        best = std::abs(d);
        basis[k] = j;
      }
    }
  }
  Eigen::Matrix3d b;
  for (int k = 0; k < 3; ++k) b.col(k) = column(basis[k]);
  Eigen::Vector3d y = b.fullPivLu().solve(Eigen::Vector3d(1.0, 0.0, 0.0));
  if ((y.array() < -1e-12).any()) throw std::runtime_error("maximin_lp: initial basis infeasible");

  double scale = 0.0;
  for (double v : f) scale = std::max(scale, std::abs(v));
  const double tol = 1e-13 * std::max(1.0, scale);

  MaximinResult out;
  const int max_iter = 20 * n;
  Eigen::Vector3d pi = Eigen::Vector3d::Zero();
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    const auto lu = b.fullPivLu();
    pi = lu.transpose().solve(Eigen::Vector3d(f[basis[0]], f[basis[1]], f[basis[2]]));
    int enter = -1;
    double best = -tol;
    for (int j = 0; j < n; ++j) {
      const double d = f[j] - pi.dot(column(j));
      if (d < best) {
        best = d;
        enter = j;
      }
    }
    if (enter < 0) {
      out.converged = true;
      break;
    }
    const Eigen::Vector3d u = lu.solve(column(enter));
    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      if (u[k] > 1e-14 && y[k] / u[k] < ratio) {
        ratio = y[k] / u[k];
        leave = k;
      }
    }
    if (leave < 0) throw std::runtime_error("maximin_lp: unbounded (directions do not wind around the origin)");
    y -= ratio * u;
    y[leave] = ratio;
    basis[leave] = enter;
    b.col(leave) = column(enter);
  }
  out.value = pi[0];
  out.center = {pi[1], pi[2]};
  return out;
}

}  // namespace minkflow::detail
