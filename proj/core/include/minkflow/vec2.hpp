#pragma once

#include <cmath>

namespace minkflow {

/// Plain 2-vector in the lab frame.
struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x{x_}, y{y_} {}

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator/(const Vec2& a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Signed area form [u, v] = det(u | v).
constexpr double bracket(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

/// e_r(theta) = (cos theta, sin theta).
inline Vec2 radial(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// e_theta(theta) = (-sin theta, cos theta).
inline Vec2 angular(double theta) { return {-std::sin(theta), std::cos(theta)}; }

}  // namespace minkflow
