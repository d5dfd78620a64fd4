#include "minkflow/isoperimetry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>

#include "minkflow/errors.hpp"

namespace minkflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kBisectionSteps = 60;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

double e_of(double area_p, double r_in, double r_out, double area, double length) {
  return 1.0 + area_p * r_in * r_out / area - 2.0 * area_p * (r_in + r_out) / length;
}

// Interpolants needed to move chord endpoints off the grid.
class ChordGeometry {
 public:
  explicit ChordGeometry(const ConvexCurve& c) : c_(c), center_(c.centroid()) {
    const int n = c.size();
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = bracket(c.vertices()[i] - center_, c.tangent(i));
    twice_sector_ = PeriodicInterpolant(w);
    speed_ = PeriodicInterpolant(c.speed());
  }

  // Area of the piece from gamma(theta) counterclockwise to gamma(theta + pi),
  // closed by the chord.
  [[nodiscard]] double piece_area(double theta) const {
    const Vec2 a = c_.position_at(theta) - center_;
    const Vec2 b = c_.position_at(theta + kPi) - center_;
    return 0.5 * twice_sector_.integral(theta, theta + kPi) + 0.5 * bracket(b, a);
  }

  [[nodiscard]] double defect(double theta) const { return piece_area(theta) - 0.5 * c_.area(); }

  [[nodiscard]] ChordEvaluation evaluate(double theta) const {
    const UnitBall& ball = c_.ball();
    const double area_p = ball.area();
    const double length = c_.q_length();
    const Vec2 end0 = c_.position_at(theta);
    const Vec2 end1 = c_.position_at(theta + kPi);
    const Vec2 mid = 0.5 * (end0 + end1);
    const double piece = piece_area(theta);

    ChordEvaluation ev;
    ev.theta = wrap_angle(theta);
    ev.l1 = speed_.integral(theta, theta + kPi);
    ev.l2 = length - ev.l1;
    const std::array<double, 2> half_len{ev.l1, ev.l2};
    const std::array<double, 2> half_area{piece, c_.area() - piece};
    std::array<double, 2> e{};
    for (int j = 0; j < 2; ++j) {
      const auto range = half_support_range(theta + j * kPi, mid);
      // The reflected curve doubles both the Q-length and the area of the half.
      e[j] = e_of(area_p, range.min, range.max, 2.0 * half_area[j], 2.0 * half_len[j]);
    }
    ev.e1 = e[0];
    ev.e2 = e[1];
    ev.weighted = (ev.l1 * ev.e1 + ev.l2 * ev.e2) / length;
    return ev;
  }

 private:
  // Extremes of [gamma(s) - center, q(s)] for s in [start, start + pi].
  [[nodiscard]] SupportRange half_support_range(double start, const Vec2& center) const {
    const UnitBall& ball = c_.ball();
    const int n = c_.size();
    const double h = c_.grid().spacing();
    const double s0 = wrap_angle(start);
    int first = static_cast<int>(std::floor(s0 / h)) + 1;
    if (first * h - s0 <= 0.0) ++first;
    std::vector<double> f;
    f.reserve(n / 2 + 3);
    f.push_back(bracket(c_.position_at(start) - center, ball.q_at(start)));
    for (int j = first;; ++j) {
      if (j * h - s0 >= kPi) break;
      const int i = j % n;
      f.push_back(bracket(c_.vertices()[i] - center, ball.q()[i]));
    }
    f.push_back(bracket(c_.position_at(start + kPi) - center, ball.q_at(start + kPi)));

    const auto [lo_it, hi_it] = std::ranges::minmax_element(f);
    SupportRange r{*lo_it, *hi_it};
    const int last = static_cast<int>(f.size()) - 1;
    // Parabolic refinement only between uniformly spaced interior nodes.
    auto refine = [&](int j) {
      if (j <= 1 || j >= last - 1) return f[j];
      const double curv = f[j + 1] - 2.0 * f[j] + f[j - 1];
      if (curv == 0.0) return f[j];
      return f[j] - (f[j + 1] - f[j - 1]) * (f[j + 1] - f[j - 1]) / (8.0 * curv);
    };
    r.min = std::min(r.min, refine(static_cast<int>(lo_it - f.begin())));
    r.max = std::max(r.max, refine(static_cast<int>(hi_it - f.begin())));
    return r;
  }

  const ConvexCurve& c_;
  Vec2 center_;
  PeriodicInterpolant twice_sector_;
  PeriodicInterpolant speed_;
};

}  // namespace

double bonnesen(const ConvexCurve& c, double r) {
  return r * c.q_length() - c.area() - c.ball().area() * r * r;
}

BonnesenValue bonnesen(const ConvexCurve& c, double r, const InOutRadii& radii) {
  return {bonnesen(c, r), r >= radii.r_in && r <= radii.r_out};
}

double symmetry_defect(const ConvexCurve& c) {
  const int n = c.size();
  const auto& g = c.vertices();
  const Vec2 center = c.centroid();
  double worst = 0.0;
  for (int i = 0; i < n / 2; ++i) {
    worst = std::max(worst, (g[i] + g[i + n / 2] - 2.0 * center).norm());
  }
  return worst / c.q_length();
}

double functional_E(const ConvexCurve& c, double tol_sym) {
  const double defect = symmetry_defect(c);
  if (defect > tol_sym) throw NotSymmetric(defect);
  const auto range = support_range(c.support());
  return e_of(c.ball().area(), range.min, range.max, c.area(), c.q_length());
}

double bisection_defect(const ConvexCurve& c, double theta) {
  return ChordGeometry(c).defect(theta);
}

ChordEvaluation evaluate_chord(const ConvexCurve& c, double theta) {
  return ChordGeometry(c).evaluate(theta);
}

FunctionalF functional_F(const ConvexCurve& c) {
  const ChordGeometry geom(c);
  const int n = c.size();
  const int half = n / 2;
  const double h = c.grid().spacing();
  const double tol_zero = 1e-11 * c.area();
  const double tol_near = 1e-6 * c.area();

  std::vector<double> d(half + 1);
  for (int i = 0; i <= half; ++i) d[i] = geom.defect(i * h);

  FunctionalF out;
  std::vector<double> roots;
  for (int i = 0; i < half; ++i) {
    if (std::abs(d[i]) <= tol_zero) {
      roots.push_back(i * h);
      continue;
    }
    if (std::abs(d[i + 1]) <= tol_zero || d[i] * d[i + 1] > 0.0) continue;
    double lo = i * h, hi = (i + 1) * h;
    double f_lo = d[i];
    for (int it = 0; it < kBisectionSteps; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = geom.defect(mid);
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  // d(pi) = -d(0), so the scan over [0, pi] cannot miss a crossing; it can
  // miss a double root where |d| only touches zero.
  for (int i = 1; i < half; ++i) {
    const double a = std::abs(d[i]);
    if (a > tol_zero && a < tol_near && a <= std::abs(d[i - 1]) && a <= std::abs(d[i + 1]) &&
        d[i - 1] * d[i] > 0.0 && d[i] * d[i + 1] > 0.0) {
      out.tangency_warning = true;
    }
  }
  if (roots.empty()) throw NoBisectingChord("no area-bisecting chord found");

  out.value = -std::numeric_limits<double>::infinity();
  out.chords.reserve(roots.size());
  for (double theta : roots) {
    out.chords.push_back(geom.evaluate(theta));
    out.value = std::max(out.value, out.chords.back().weighted);
  }
  return out;
}

double IsoReport::min_slack() const {
  double m = std::min({isoperimetric_slack, bonnesen_g_at_rin, bonnesen_g_at_rout, f_value,
                       gage_slack, refined_gage_slack, schwarz_slack, median_bound_slack});
  if (e_value) m = std::min(m, *e_value);
  return m;
}

IsoReport gage_check(const ConvexCurve& c) {
  IsoReport rep;
  const double area_p = c.ball().area();
  rep.q_length = c.q_length();
  rep.area = c.area();
  rep.area_p = area_p;
  rep.iso_ratio = rep.q_length * rep.q_length / rep.area;
  rep.isoperimetric_slack = rep.iso_ratio - 4.0 * area_p;

  const auto radii = inscribed_circumscribed(c);
  rep.r_in = radii.r_in;
  rep.r_out = radii.r_out;
  rep.radii_converged = radii.converged;
  rep.bonnesen_g_at_rin = bonnesen(c, radii.r_in);
  rep.bonnesen_g_at_rout = bonnesen(c, radii.r_out);

  if (symmetry_defect(c) <= kTolSym) rep.e_value = functional_E(c);
  const auto f = functional_F(c);
  rep.f_value = f.value;
  rep.tangency_warning = f.tangency_warning;
  rep.chord_count = static_cast<int>(f.chords.size());

  const auto& k = c.curvature();
  const auto& lambda = c.speed();
  const auto& sup = c.support();
  const double h = c.grid().spacing();
  double k2 = 0.0, f2 = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    k2 += k[i] * k[i] * lambda[i];
    f2 += sup[i] * sup[i] * lambda[i];
  }
  rep.k2_ds = k2 * h;
  const double ratio_term = area_p * rep.q_length / rep.area;
  rep.gage_slack = rep.k2_ds - ratio_term;
  rep.refined_gage_slack = (1.0 - rep.f_value) * rep.k2_ds - ratio_term;
  rep.schwarz_slack = f2 * h * rep.k2_ds - rep.q_length * rep.q_length;

  rep.k_star = median_curvature(c);
  rep.median_bound_slack =
      c.ball().median_bound_constant() * rep.q_length / rep.area - rep.k_star;
  return rep;
}

}  // namespace minkflow
