#pragma once

#include <cmath>
#include <numbers>

namespace contraplan {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// w x r for a scalar angular rate w.
constexpr Vec2 cross(double w, Vec2 r) { return {-w * r.y, w * r.x}; }
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
constexpr double squared_norm(Vec2 v) { return dot(v, v); }

inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double pi = std::numbers::pi;
  if (a > -pi && a <= pi) return a;
  double r = std::remainder(a, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 position() const { return {x, y}; }
  /// Maps a point from this frame into the parent frame.
  Vec2 transform(Vec2 local) const { return position() + rotate(local, theta); }
  /// Maps a point from the parent frame into this frame.
  Vec2 inverse_transform(Vec2 world) const { return rotate(world - position(), -theta); }
  bool operator==(const Pose2&) const = default;
};

struct Twist2 {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;

  Vec2 linear() const { return {vx, vy}; }
  bool operator==(const Twist2&) const = default;
};

/// Axis-aligned rectangle.
struct Rect {
  Vec2 min;
  Vec2 max;

  bool contains(Vec2 p) const { return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y; }
  bool strictly_contains(Vec2 p) const { return p.x > min.x && p.x < max.x && p.y > min.y && p.y < max.y; }
  bool operator==(const Rect&) const = default;
};

}  // namespace contraplan
