#include "minkflow/unit_ball.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "minkflow/errors.hpp"
#include "minkflow/spectral.hpp"

namespace minkflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

UnitBall::UnitBall(SupportFunction sf, AngleGrid grid)
    : sf_(std::move(sf)), grid_(grid) {}

UnitBall UnitBall::build(const SupportFunction& sf, const AngleGrid& grid) {
  UnitBall ball(sf, grid);
  const int n = grid.size();
  ball.a_.resize(n);
  ball.da_.resize(n);
  ball.d2a_.resize(n);
  ball.radius_sum_.resize(n);
  ball.p_.resize(n);
  ball.q_.resize(n);
  ball.normals_.resize(n);
  ball.bracket_pp_.resize(n);
  ball.bracket_qq_.resize(n);
  ball.fcoef_.resize(n);
  ball.gcoef_.resize(n);

  std::vector<int> nonpositive, nonconvex;
  for (int i = 0; i < n; ++i) {
    const double theta = grid.angle(i);
    const double a = sf.value(theta);
    const double da = sf.d1(theta);
    const double d2a = sf.d2(theta);
    if (!(a > 0.0)) nonpositive.push_back(i);
    if (!(a + d2a > 0.0)) nonconvex.push_back(i);
    ball.a_[i] = a;
    ball.da_[i] = da;
    ball.d2a_[i] = d2a;
  }
  if (!nonpositive.empty() || !nonconvex.empty()) {
    std::ostringstream os;
    os << "support function does not describe a strictly convex ball:";
    auto dump = [&](const char* label, const std::vector<int>& nodes) {
      if (nodes.empty()) return;
      os << ' ' << label << " at " << nodes.size() << " node(s) [";
      for (std::size_t j = 0; j < std::min<std::size_t>(nodes.size(), 8); ++j) {
        os << (j ? ", " : "") << nodes[j] << " (theta=" << grid.angle(nodes[j]) << ")";
      }
      os << (nodes.size() > 8 ? ", ...]" : "]");
    };
    dump("a <= 0", nonpositive);
    dump("a + a'' <= 0", nonconvex);
    std::vector<int> all = nonpositive;
    all.insert(all.end(), nonconvex.begin(), nonconvex.end());
    std::ranges::sort(all);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    throw InvalidUnitBall(os.str(), std::move(all));
  }

  for (int i = 0; i < n; ++i) {
    const double theta = grid.angle(i);
    const double a = ball.a_[i];
    const double rs = a + ball.d2a_[i];
    ball.radius_sum_[i] = rs;
    ball.p_[i] = a * radial(theta) + ball.da_[i] * angular(theta);
    ball.q_[i] = angular(theta) / a;
    ball.normals_[i] = radial(theta);
    ball.bracket_pp_[i] = a * rs;
    ball.bracket_qq_[i] = 1.0 / (a * a);
    ball.fcoef_[i] = a / rs;
    ball.gcoef_[i] = 2.0 * ball.da_[i] / rs;
  }
  ball.area_ = 0.5 * periodic_integral(ball.bracket_pp_);

  const TrigPolynomial& poly = sf.polynomial();
  ball.bracket_pp_poly_ = poly * (poly + poly.differentiated(2));
  return ball;
}

Vec2 UnitBall::p_at(double theta) const {
  return sf_.value(theta) * radial(theta) + sf_.d1(theta) * angular(theta);
}

Vec2 UnitBall::q_at(double theta) const { return angular(theta) / sf_.value(theta); }

double UnitBall::bracket_pp_at(double theta) const { return bracket_pp_poly_(theta); }

double UnitBall::minkowski_norm(const Vec2& v) const {
  if (v.x == 0.0 && v.y == 0.0) return 0.0;
  const int n = size();
  // The polar angle of p(theta) increases strictly with theta, so exactly one
  // grid interval brackets the direction of v.
  int lo = -1;
  for (int i = 0; i < n; ++i) {
    const Vec2& p0 = p_[i];
    const Vec2& p1 = p_[grid_.wrap(i + 1)];
    if (bracket(p0, v) >= 0.0 && bracket(p1, v) < 0.0 && dot(p0, v) > 0.0) {
      lo = i;
      break;
    }
  }
  if (lo < 0) throw std::logic_error("minkowski_norm: failed to bracket the direction");
  double t0 = grid_.angle(lo);
  double t1 = t0 + grid_.spacing();
  for (int it = 0; it < 50 && t1 - t0 > 1e-12; ++it) {
    const double mid = 0.5 * (t0 + t1);
    if (bracket(p_at(mid), v) >= 0.0) {
      t0 = mid;
    } else {
      t1 = mid;
    }
  }
  const Vec2 boundary = p_at(0.5 * (t0 + t1));
  return dot(v, boundary) / dot(boundary, boundary);
}

double UnitBall::dual_support(const Vec2& w, double theta) const { return bracket(w, q_at(theta)); }

TangentChord UnitBall::tangent_chord(double theta1, double theta2) const {
  const double span = wrap_angle(theta2 - theta1);
  if (span == 0.0) throw std::invalid_argument("tangent_chord: degenerate chord (theta1 == theta2)");
  if (!(span < std::numbers::pi)) {
    throw std::invalid_argument("tangent_chord: requires 0 < theta2 - theta1 < pi");
  }
  const Vec2 p1 = p_at(theta1), p2 = p_at(theta2);
  const Vec2 q1 = q_at(theta1), q2 = q_at(theta2);
  const double denom = bracket(q1, q2);
  if (std::abs(denom) < 1e-14) {
    throw std::invalid_argument("tangent_chord: tangents are parallel ([q1, q2] = 0)");
  }
  TangentChord tc;
  tc.l1 = (1.0 - bracket(p1, q2)) / denom;
  tc.l2 = (1.0 - bracket(p2, q1)) / denom;
  tc.arc = bracket_pp_poly_.integrate(theta1, theta1 + span);
  tc.delta = tc.l1 + tc.l2 - tc.arc;
  return tc;
}

double UnitBall::median_bound_constant() const {
  // Refine the grid maxima so the constant is not underestimated between nodes.
  const int samples = 16 * size();
  double q0 = 0.0, pp = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double theta = kTwoPi * i / samples;
    q0 = std::max(q0, q_at(theta).norm());
    pp = std::max(pp, bracket_pp_at(theta));
  }
  return q0 * q0 * pp;
}

UnitBall UnitBall::with_area_offset(double offset) const {
  UnitBall copy = *this;
  copy.area_ += offset;
  return copy;
}

}  // namespace minkflow
