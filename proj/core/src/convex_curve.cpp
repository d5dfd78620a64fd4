#include "minkflow/convex_curve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "minkflow/errors.hpp"
#include "maximin_lp.hpp"

namespace minkflow {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ConvexCurve ConvexCurve::from_curvature(std::shared_ptr<const UnitBall> ball, std::vector<double> k,
                                        Vec2 base, double tol_close) {
  if (!ball) throw std::invalid_argument("from_curvature: null unit ball");
  const int n = ball->size();
  if (static_cast<int>(k.size()) != n) {
    throw std::invalid_argument("from_curvature: expected " + std::to_string(n) +
                                " curvature samples, got " + std::to_string(k.size()));
  }
  std::vector<int> bad;
  for (int i = 0; i < n; ++i) {
    if (!(k[i] > 0.0) || !std::isfinite(k[i])) bad.push_back(i);
  }
  if (!bad.empty()) throw NonPositiveCurvature(std::move(bad));

  ConvexCurve c;
  c.ball_ = std::move(ball);
  c.tol_close_ = tol_close;
  c.k_ = std::move(k);
  const UnitBall& b = *c.ball_;
  const double h = b.grid().spacing();

  c.lambda_.resize(n);
  c.rho_.resize(n);
  std::vector<double> dx(n), dy(n);
  double r_sin = 0.0, r_cos = 0.0, length = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2 e = b.normals()[i];
    c.lambda_[i] = b.bracket_pp()[i] / c.k_[i];
    c.rho_[i] = b.radius_sum()[i] / c.k_[i];
    dx[i] = -c.rho_[i] * e.y;
    dy[i] = c.rho_[i] * e.x;
    r_sin += c.rho_[i] * e.y;
    r_cos += c.rho_[i] * e.x;
    length += c.lambda_[i];
  }
  c.r_sin_ = r_sin * h;
  c.r_cos_ = r_cos * h;
  c.length_ = length * h;
  if (std::max(std::abs(c.r_sin_), std::abs(c.r_cos_)) > tol_close * c.length_) {
    throw ClosureViolation(c.r_sin_, c.r_cos_, tol_close * c.length_);
  }

  auto [px, py] = periodic_primitive_pair(dx, dy);
  const auto& xs = px.values;
  const auto& ys = py.values;

  // Area and centroid accumulated relative to gamma(0).
  double twice_area = 0.0;
  Vec2 moment;
  for (int i = 0; i < n; ++i) {
    const Vec2 rel{xs[i], ys[i]};
    const double w = bracket(rel, Vec2{dx[i], dy[i]});
    twice_area += w;
    moment += w * rel;
  }
  twice_area *= h;
  moment *= h;
  c.area_ = 0.5 * twice_area;
  c.centroid_ = base + moment / (3.0 * c.area_);

  c.gamma_.resize(n);
  for (int i = 0; i < n; ++i) c.gamma_[i] = base + Vec2{xs[i], ys[i]};
  c.x_interp_ = px.interpolant.shifted(base.x);
  c.y_interp_ = py.interpolant.shifted(base.y);
  c.support_ = c.support_about(c.centroid_);
  return c;
}

std::vector<double> ConvexCurve::support_about(const Vec2& origin) const {
  std::vector<double> f(size());
  const auto& q = ball_->q();
  for (int i = 0; i < size(); ++i) f[i] = bracket(gamma_[i] - origin, q[i]);
  return f;
}

Vec2 ConvexCurve::position_at(double theta) const { return {x_interp_(theta), y_interp_(theta)}; }

double ConvexCurve::euclidean_support_at(double theta) const {
  return dot(position_at(theta), radial(theta));
}

ConvexCurve ConvexCurve::translated(const Vec2& shift) const {
  return from_curvature(ball_, k_, base() + shift, tol_close_);
}

ConvexCurve ConvexCurve::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
  std::vector<double> k = k_;
  for (auto& v : k) v /= s;
  return from_curvature(ball_, std::move(k), base() * s, tol_close_);
}

std::vector<double> sample_harmonics(std::span<const Harmonic> harmonics, const AngleGrid& grid) {
  std::vector<int> seen;
  for (const auto& h : harmonics) {
    if (h.order < 0) {
      throw std::invalid_argument("harmonic order " + std::to_string(h.order) + " is negative");
    }
    if (std::ranges::find(seen, h.order) != seen.end()) {
      throw std::invalid_argument("harmonic order " + std::to_string(h.order) + " appears twice");
    }
    if (h.order == 0 && h.sin_coef != 0.0) {
      throw std::invalid_argument("harmonic order 0 cannot carry a sine coefficient");
    }
    seen.push_back(h.order);
  }
  std::vector<double> out(grid.size(), 0.0);
  for (int i = 0; i < grid.size(); ++i) {
    const double theta = grid.angle(i);
    for (const auto& h : harmonics) {
      out[i] += h.cos_coef * std::cos(h.order * theta) + h.sin_coef * std::sin(h.order * theta);
    }
  }
  return out;
}

CurveMetrics metrics(const ConvexCurve& c) {
  CurveMetrics m;
  m.q_length = c.q_length();
  m.area = c.area();
  m.iso_ratio = m.q_length * m.q_length / m.area;
  const auto [lo, hi] = std::ranges::minmax(c.curvature());
  m.k_min = lo;
  m.k_max = hi;
  m.mu0 = 1.0 / hi;
  m.k_star = median_curvature(c);
  const auto radii = inscribed_circumscribed(c);
  m.r_in = radii.r_in;
  m.r_out = radii.r_out;
  return m;
}

IdentityResiduals prop1_identities(const ConvexCurve& c, std::optional<Vec2> origin) {
  const auto f = origin ? c.support_about(*origin) : c.support();
  const auto& k = c.curvature();
  const auto& lambda = c.speed();
  const double h = c.grid().spacing();
  double ik = 0.0, ifs = 0.0, ifk = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    ik += k[i] * lambda[i];
    ifs += f[i] * lambda[i];
    ifk += f[i] * k[i] * lambda[i];
  }
  return {ik * h - 2.0 * c.ball().area(), ifs * h - 2.0 * c.area(), ifk * h - c.q_length()};
}

double median_curvature(const ConvexCurve& c) {
  const auto& k = c.curvature();
  const int n = c.size();
  const int window = n / 2;
  // Monotone queue of indices into the doubled sequence with increasing values.
  std::deque<int> queue;
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n + window - 1; ++j) {
    const double v = k[j % n];
    while (!queue.empty() && k[queue.back() % n] >= v) queue.pop_back();
    queue.push_back(j);
    const int start = j - window + 1;
    if (start < 0) continue;
    while (queue.front() < start) queue.pop_front();
    best = std::max(best, k[queue.front() % n]);
  }
  return best;
}

SupportRange support_range(std::span<const double> f) {
  const int n = static_cast<int>(f.size());
  const auto [lo_it, hi_it] = std::ranges::minmax_element(f);
  auto refine = [&](int j) {
    const double fm = f[(j - 1 + n) % n], f0 = f[j], fp = f[(j + 1) % n];
    const double curv = fp - 2.0 * f0 + fm;
    if (curv == 0.0) return f0;
    return f0 - (fp - fm) * (fp - fm) / (8.0 * curv);
  };
  const int jlo = static_cast<int>(lo_it - f.begin());
  const int jhi = static_cast<int>(hi_it - f.begin());
  return {std::min(*lo_it, refine(jlo)), std::max(*hi_it, refine(jhi))};
}

namespace {

/// Six-point Lagrange interpolation of periodic node values v at theta =
/// (i + u) h with 0 <= u <= 1.
double local_interp(std::span<const double> v, int i, double u) {
  const int n = static_cast<int>(v.size());
  double sum = 0.0;
  for (int j = -2; j <= 3; ++j) {
    double w = 1.0;
    for (int m = -2; m <= 3; ++m) {
      if (m != j) w *= (u - m) / static_cast<double>(j - m);
    }
    sum += w * v[((i + j) % n + n) % n];
  }
  return sum;
}

/// Continuous maximin of sign * [gamma(theta) - x, q(theta)] over x: grid
/// constraints first, then the continuous minimizers between nodes are added
/// until none undercuts the linear-program value.
detail::MaximinResult continuous_maximin(const ConvexCurve& c, double sign) {
  const int n = c.size();
  const double h = c.grid().spacing();
  const auto f0 = c.support_about({0.0, 0.0});
  std::vector<double> f(n);
  std::vector<Vec2> q(c.ball().q().begin(), c.ball().q().end());
  std::ranges::transform(f0, f.begin(), [&](double v) { return sign * v; });
  for (auto& v : q) v = sign * v;
  auto exact_at = [&](double theta, const Vec2& x) {
    const Vec2 qt = sign * c.ball().q_at(theta);
    return bracket(c.position_at(theta) - x, qt);
  };

  std::vector<double> v(n);
  detail::MaximinResult res;
  for (int round = 0; round < 30; ++round) {
    res = detail::maximin_lp(f, q);
    const double tol = 1e-11 * std::max(1.0, std::abs(res.value));
    const double band = res.value + 1e-3 * std::max(1.0, std::abs(res.value));
    for (int i = 0; i < n; ++i) v[i] = f[i] - bracket(res.center, q[i]);
    bool added = false;
    for (int i = 0; i < n; ++i) {
      if (v[i] > band || v[i] > v[(i + 1) % n] || v[i] > v[(i + n - 1) % n]) continue;
      double lo = -1.0, hi = 1.0;
      auto g = [&](double u) { return u < 0.0 ? local_interp(v, i - 1, u + 1.0) : local_interp(v, i, u); };
      constexpr double r = 0.6180339887498949;
      for (int it = 0; it < 48; ++it) {
        const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
        if (g(x1) < g(x2)) hi = x2; else lo = x1;
      }
      const double t = c.grid().angle(i) + 0.5 * (lo + hi) * h;
      if (exact_at(t, res.center) < res.value - tol) {
        f.push_back(sign * bracket(c.position_at(t), c.ball().q_at(t)));
        q.push_back(sign * c.ball().q_at(t));
        added = true;
      }
    }
    if (!added) return res;
  }
  res.converged = false;
  return res;
}

}  // namespace

InOutRadii inscribed_circumscribed(const ConvexCurve& c) {
  const auto inner = continuous_maximin(c, 1.0);
  const auto outer = continuous_maximin(c, -1.0);
  InOutRadii out;
  out.r_in = inner.value;
  out.center_in = inner.center;
  out.r_out = -outer.value;
  out.center_out = outer.center;
  out.converged = inner.converged && outer.converged;
  return out;
}

ConvexCurve inner_parallel(const ConvexCurve& c, double r) {
  if (r < 0.0) throw std::invalid_argument("inner_parallel: negative offset");
  const auto [lo, hi] = std::ranges::minmax(c.curvature());
  const double mu0 = 1.0 / hi;
  if (r >= mu0) throw RadiusTooLarge(r, mu0);
  std::vector<double> k = c.curvature();
  for (auto& v : k) v = v / (1.0 - r * v);
  const Vec2 base = c.base() - r * c.ball().p().front();
  return ConvexCurve::from_curvature(c.ball_ptr(), std::move(k), base, c.tol_close());
}

namespace {

// Supporting half-planes <x, e_r(phi_j)> <= h(phi_j) - r a(phi_j) of the inner
// parallel body, on a uniform set of normal directions.
class ParallelBody {
 public:
  ParallelBody(const ConvexCurve& c, int directions) : m_(directions) {
    normal_.resize(m_);
    edge_dir_.resize(m_);
    h_.resize(m_);
    a_.resize(m_);
    for (int j = 0; j < m_; ++j) {
      const double phi = 2.0 * kPi * j / m_;
      normal_[j] = radial(phi);
      edge_dir_[j] = angular(phi);
      h_[j] = c.euclidean_support_at(phi);
      a_[j] = c.ball().support().value(phi);
    }
  }

  // Q-perimeter of the intersection; 0 when it is empty or degenerate.
  [[nodiscard]] double q_length(double r) const {
    auto offset = [&](int j) { return h_[j] - r * a_[j]; };
    auto meet = [&](int i, int j) {
      // Solve <x, n_i> = b_i, <x, n_j> = b_j.
      const Vec2& ni = normal_[i];
      const Vec2& nj = normal_[j];
      const double det = bracket(ni, nj);
      const double bi = offset(i), bj = offset(j);
      return Vec2{(bi * nj.y - bj * ni.y) / det, (ni.x * bj - nj.x * bi) / det};
    };
    const double slack = 1e-13 * (1.0 + std::abs(h_[0]));
    auto outside = [&](const Vec2& x, int j) { return dot(x, normal_[j]) > offset(j) + slack; };

    std::deque<int> dq;
    for (int j = 0; j < m_; ++j) {
      while (dq.size() >= 2 && outside(meet(dq[dq.size() - 2], dq.back()), j)) dq.pop_back();
      while (dq.size() >= 2 && outside(meet(dq[0], dq[1]), j)) dq.pop_front();
      dq.push_back(j);
    }
    while (dq.size() >= 3 && outside(meet(dq[dq.size() - 2], dq.back()), dq.front())) dq.pop_back();
    while (dq.size() >= 3 && outside(meet(dq[0], dq[1]), dq.back())) dq.pop_front();
    if (dq.size() < 3) return 0.0;

    const int m = static_cast<int>(dq.size());
    // Consecutive normals must turn by less than pi or the region is unbounded or empty.
    for (int i = 0; i < m; ++i) {
      if (bracket(normal_[dq[i]], normal_[dq[(i + 1) % m]]) <= 0.0) return 0.0;
    }
    std::vector<Vec2> corner(m);
    for (int i = 0; i < m; ++i) corner[i] = meet(dq[i], dq[(i + 1) % m]);
    double length = 0.0;
    for (int i = 0; i < m; ++i) {
      const int line = dq[i];
      const Vec2 edge = corner[i] - corner[(i - 1 + m) % m];
      const double len = dot(edge, edge_dir_[line]);
      if (len < -1e-9 * (1.0 + std::abs(h_[0]))) return 0.0;
      length += std::max(len, 0.0) * a_[line];
    }
    return length;
  }

 private:
  int m_;
  std::vector<Vec2> normal_, edge_dir_;
  std::vector<double> h_, a_;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

double parallel_body_q_length(const ConvexCurve& c, double r, int directions) {
  if (r < 0.0) throw std::invalid_argument("parallel_body_q_length: negative offset");
  return ParallelBody(c, directions > 0 ? directions : 8 * c.size()).q_length(r);
}

double area_from_parallel_lengths(const ConvexCurve& c, double r_in) {
  const auto [lo, hi] = std::ranges::minmax(c.curvature());
  const double mu0 = std::min(1.0 / hi, r_in);
  const double area_p = c.ball().area();
  // Smooth regime: L_Q(r) = L_Q - 2 A(P) r.
  double total = c.q_length() * mu0 - area_p * mu0 * mu0;
  if (r_in <= mu0) return total;

  const ParallelBody body(c, std::max(4096, 8 * c.size()));
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  constexpr int kPanels = 40;
  const double panel = (r_in - mu0) / kPanels;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = mu0 + (p + 0.5) * panel;
    for (std::size_t i = 0; i < x.size(); ++i) {
      total += 0.5 * panel * w[i] * body.q_length(mid + 0.5 * panel * x[i]);
    }
  }
  return total;
}

}  // namespace minkflow
