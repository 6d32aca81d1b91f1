#pragma once

#include <cmath>

namespace follower {

/// Planar vector. Positions are in meters, velocities in m/s.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 &operator+=(const Vec2 &o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 &operator-=(const Vec2 &o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2 &operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator/(const Vec2 &a, double s) {
    return {a.x / s, a.y / s};
  }
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

constexpr double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product; positive iff b lies counterclockwise of a.
constexpr double cross2(const Vec2 &a, const Vec2 &b) { return a.x * b.y - a.y * b.x; }

constexpr double norm_sq(const Vec2 &v) { return dot(v, v); }

inline double norm(const Vec2 &v) { return std::hypot(v.x, v.y); }

/// Unit vector along v, or the zero vector when v is zero.
inline Vec2 normalized(const Vec2 &v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : Vec2{};
}

/// Counterclockwise rotation by theta radians.
inline Vec2 rotate(const Vec2 &v, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Left-hand perpendicular (rotation by +pi/2).
constexpr Vec2 perp(const Vec2 &v) { return {-v.y, v.x}; }

/// Step function with H(0) = 0.
constexpr int heaviside(double x) { return x > 0.0 ? 1 : 0; }

inline bool is_finite(const Vec2 &v) { return std::isfinite(v.x) && std::isfinite(v.y); }

}  // namespace follower
