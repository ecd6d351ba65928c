#pragma once

#include <array>
#include <span>

#include "contraplan/geometry.hpp"

// Planar narrowphase for discs and boxes. Manifold normals point from shape A
// to shape B; separations are negative when the shapes overlap.
namespace contraplan::collision {

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Convex quadrilateral, vertices counter-clockwise with outward edge normals.
struct Polygon {
  std::array<Vec2, 4> vertices;
  std::array<Vec2, 4> normals;
  Vec2 centroid;
};

Polygon make_box(const Pose2& pose, Vec2 half_extents);

struct ManifoldPoint {
  Vec2 point;
  double separation = 0.0;
};

struct Manifold {
  Vec2 normal;
  std::array<ManifoldPoint, 2> points;
  int count = 0;
};

/// Contacts closer than margin are reported (speculative contacts).
Manifold collide(const Circle& a, const Circle& b, double margin);
Manifold collide(const Polygon& a, const Circle& b, double margin);
Manifold collide(const Polygon& a, const Polygon& b, double margin);

/// Separating-axis distance between two convex point sets given their
/// candidate axes. Negative iff the interiors overlap.
double sat_separation(std::span<const Vec2> a, std::span<const Vec2> axes_a, std::span<const Vec2> b,
                      std::span<const Vec2> axes_b);

/// SAT separation of a box and a line segment.
double separation(const Polygon& box, Vec2 seg_from, Vec2 seg_to);

}  // namespace contraplan::collision
