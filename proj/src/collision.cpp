#include "contraplan/collision.hpp"

#include <algorithm>
#include <limits>

namespace contraplan::collision {
namespace {

constexpr double kTolerance = 5e-5;

struct EdgeSeparation {
  int edge = 0;
  double separation = -std::numeric_limits<double>::infinity();
};

// Largest separation of b's vertices from any face of a.
EdgeSeparation find_max_separation(const Polygon& a, const Polygon& b) {
  EdgeSeparation best;
  for (int i = 0; i < 4; ++i) {
    const Vec2 n = a.normals[i];
    const Vec2 v = a.vertices[i];
    double si = std::numeric_limits<double>::infinity();
    for (const Vec2& w : b.vertices) si = std::min(si, dot(n, w - v));
    if (si > best.separation) best = {i, si};
  }
  return best;
}

// Keeps the part of segment [in0, in1] with dot(normal, p) <= offset.
int clip_segment(std::array<Vec2, 2>& out, const std::array<Vec2, 2>& in, Vec2 normal, double offset) {
  int n = 0;
  const double d0 = dot(normal, in[0]) - offset;
  const double d1 = dot(normal, in[1]) - offset;
  if (d0 <= 0.0) out[n++] = in[0];
  if (d1 <= 0.0) out[n++] = in[1];
  if (d0 * d1 < 0.0) {
    const double t = d0 / (d0 - d1);
    out[n++] = in[0] + t * (in[1] - in[0]);
  }
  return n;
}

}  // namespace

Polygon make_box(const Pose2& pose, Vec2 h) {
  Polygon p;
  const std::array<Vec2, 4> local{{{-h.x, -h.y}, {h.x, -h.y}, {h.x, h.y}, {-h.x, h.y}}};
  const std::array<Vec2, 4> normals{{{0.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}}};
  for (int i = 0; i < 4; ++i) {
    p.vertices[i] = pose.transform(local[i]);
    p.normals[i] = rotate(normals[i], pose.theta);
  }
  p.centroid = pose.position();
  return p;
}

Manifold collide(const Circle& a, const Circle& b, double margin) {
  Manifold m;
  const Vec2 d = b.center - a.center;
  const double dist = norm(d);
  const double sep = dist - a.radius - b.radius;
  if (sep > margin) return m;
  m.normal = dist > 1e-12 ? d * (1.0 / dist) : Vec2{1.0, 0.0};
  m.points[0] = {a.center + m.normal * a.radius, sep};
  m.count = 1;
  return m;
}

Manifold collide(const Polygon& a, const Circle& b, double margin) {
  Manifold m;
  const Vec2 c = b.center;
  int face = 0;
  double sep = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    const double s = dot(a.normals[i], c - a.vertices[i]);
    if (s > sep) {
      sep = s;
      face = i;
    }
  }
  if (sep > b.radius + margin) return m;

  const Vec2 v1 = a.vertices[face];
  const Vec2 v2 = a.vertices[(face + 1) % 4];
  const Vec2 n = a.normals[face];

  if (sep < 1e-12) {
    // Centre inside the polygon.
    m.normal = n;
    m.points[0] = {c - n * sep, sep - b.radius};
    m.count = 1;
    return m;
  }

  const double u1 = dot(c - v1, v2 - v1);
  const double u2 = dot(c - v2, v1 - v2);
  auto vertex_contact = [&](Vec2 v) {
    const Vec2 d = c - v;
    const double dist = norm(d);
    if (dist - b.radius > margin) return;
    m.normal = dist > 1e-12 ? d * (1.0 / dist) : n;
    m.points[0] = {v, dist - b.radius};
    m.count = 1;
  };
  if (u1 <= 0.0) {
    vertex_contact(v1);
  } else if (u2 <= 0.0) {
    vertex_contact(v2);
  } else {
    m.normal = n;
    m.points[0] = {c - n * sep, sep - b.radius};
    m.count = 1;
  }
  return m;
}

Manifold collide(const Polygon& a, const Polygon& b, double margin) {
  Manifold m;
  const EdgeSeparation sa = find_max_separation(a, b);
  if (sa.separation > margin) return m;
  const EdgeSeparation sb = find_max_separation(b, a);
  if (sb.separation > margin) return m;

  const Polygon* ref = &a;
  const Polygon* inc = &b;
  int edge = sa.edge;
  bool flip = false;
  if (sb.separation > sa.separation + kTolerance) {
    ref = &b;
    inc = &a;
    edge = sb.edge;
    flip = true;
  }

  const Vec2 ref_normal = ref->normals[edge];
  int inc_edge = 0;
  double min_dot = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    const double d = dot(ref_normal, inc->normals[i]);
    if (d < min_dot) {
      min_dot = d;
      inc_edge = i;
    }
  }
  const std::array<Vec2, 2> incident{inc->vertices[inc_edge], inc->vertices[(inc_edge + 1) % 4]};

  const Vec2 v11 = ref->vertices[edge];
  const Vec2 v12 = ref->vertices[(edge + 1) % 4];
  Vec2 tangent = v12 - v11;
  tangent = tangent * (1.0 / norm(tangent));
  const double front = dot(ref_normal, v11);
  const double side1 = -dot(tangent, v11);
  const double side2 = dot(tangent, v12);

  std::array<Vec2, 2> clip1{};
  std::array<Vec2, 2> clip2{};
  if (clip_segment(clip1, incident, -tangent, side1) < 2) return m;
  if (clip_segment(clip2, clip1, tangent, side2) < 2) return m;

  m.normal = flip ? -ref_normal : ref_normal;
  for (const Vec2& p : clip2) {
    const double s = dot(ref_normal, p) - front;
    if (s <= margin) m.points[m.count++] = {p, s};
  }
  return m;
}

double sat_separation(std::span<const Vec2> a, std::span<const Vec2> axes_a, std::span<const Vec2> b,
                      std::span<const Vec2> axes_b) {
  double best = -std::numeric_limits<double>::infinity();
  auto test = [&](Vec2 axis) {
    double amin = std::numeric_limits<double>::infinity();
    double amax = -amin;
    double bmin = amin;
    double bmax = -amin;
    for (const Vec2& p : a) {
      const double s = dot(axis, p);
      amin = std::min(amin, s);
      amax = std::max(amax, s);
    }
    for (const Vec2& p : b) {
      const double s = dot(axis, p);
      bmin = std::min(bmin, s);
      bmax = std::max(bmax, s);
    }
    best = std::max(best, std::max(bmin - amax, amin - bmax));
  };
  for (const Vec2& ax : axes_a) test(ax);
  for (const Vec2& ax : axes_b) test(ax);
  return best;
}

double separation(const Polygon& box, Vec2 seg_from, Vec2 seg_to) {
  const Vec2 d = seg_to - seg_from;
  const double len = norm(d);
  const std::array<Vec2, 2> seg{seg_from, seg_to};
  if (len < 1e-15) {
    const std::array<Vec2, 2> axes{box.normals[0], box.normals[1]};
    return sat_separation(box.vertices, axes, std::span<const Vec2>(seg.data(), 1), {});
  }
  const std::array<Vec2, 2> box_axes{box.normals[0], box.normals[1]};
  const std::array<Vec2, 2> seg_axes{perp(d) * (1.0 / len), d * (1.0 / len)};
  return sat_separation(box.vertices, box_axes, seg, seg_axes);
}

}  // namespace contraplan::collision
