#include "contraplan/physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "contraplan/audit.hpp"
#include "contraplan/errors.hpp"

namespace contraplan {
namespace {

using collision::Circle;
using collision::Manifold;
using collision::Polygon;

constexpr int kKinematic = -1;

struct ContactPoint {
  int a = kKinematic;  // dynamic body index, or kKinematic for gripper/wall
  int b = 0;           // always a dynamic body
  Vec2 normal;         // from a to b
  Vec2 ra;
  Vec2 rb;
  Vec2 kinematic_velocity;  // velocity of the contact point on a kinematic a
  double separation = 0.0;
  double friction = 0.0;
  double normal_mass = 0.0;
  double tangent_mass = 0.0;
  double target_velocity = 0.0;
  double normal_impulse = 0.0;
  double tangent_impulse = 0.0;
};

bool finite(const Pose2& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.theta); }
bool finite(const Twist2& v) { return std::isfinite(v.vx) && std::isfinite(v.vy) && std::isfinite(v.omega); }

void require_finite(const SystemState& s, const Control& u) {
  bool ok = finite(s.robot) && finite(s.robot_velocity) && std::isfinite(u.vx) && std::isfinite(u.vy) &&
            std::isfinite(u.omega);
  for (const auto& o : s.objects) ok = ok && finite(o.pose) && finite(o.velocity);
  if (!ok) throw NumericDomainError("non-finite state or control component");
}

}  // namespace

std::vector<Polygon> gripper_polygons(const GripperGeometry& gripper, const Pose2& pose) {
  std::vector<Polygon> out;
  out.reserve(gripper.parts.size());
  for (const auto& part : gripper.parts) {
    const Vec2 c = pose.transform(part.center);
    out.push_back(collision::make_box({c.x, c.y, pose.theta}, part.half_extents));
  }
  return out;
}

bool in_capture_region(const GripperGeometry& gripper, const Pose2& pose, Vec2 point) {
  return gripper.capture.contains(pose.inverse_transform(point));
}

bool check_static_collision(const SceneDescription& scene, const SystemState& state) {
  for (const Polygon& part : gripper_polygons(scene.gripper, state.robot)) {
    for (const Vec2& v : part.vertices)
      if (!scene.boundary.contains(v)) return true;
    for (const Wall& w : scene.walls)
      if (collision::separation(part, w.from, w.to) < 0.0) return true;
  }
  return false;
}

PlanarWorld::PlanarWorld(const SceneDescription& scene, const WorldRealization& realization,
                         PhysicsSettings settings)
    : boundary_(scene.boundary), gripper_(scene.gripper.parts), realization_(realization), settings_(settings) {
  if (realization.origin == WorldOrigin::hidden) audit::record_hidden_read();
  if (realization.objects.size() != scene.objects.size())
    throw ConfigError("world realization does not match the scene object count");

  for (const Wall& w : scene.walls) {
    const Vec2 d = w.to - w.from;
    const double len = norm(d);
    const Vec2 mid = (w.from + w.to) * 0.5;
    walls_.push_back(collision::make_box({mid.x, mid.y, std::atan2(d.y, d.x)},
                                         {0.5 * len, settings_.wall_half_thickness}));
  }
  for (const auto& part : gripper_) {
    gripper_reach_ = std::max(gripper_reach_, norm(part.center) + norm(part.half_extents));
  }

  constexpr double pi = std::numbers::pi;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const ObjectParams& p = realization.objects[i];
    Body b;
    b.shape = scaled(scene.objects[i].shape, p.size_scale);
    b.friction = p.friction;
    b.radius = bounding_radius(b.shape);
    double inertia_per_mass = 0.0;
    double lever = 0.0;
    if (const auto* disc = std::get_if<Disc>(&b.shape)) {
      inertia_per_mass = 0.5 * disc->radius * disc->radius;
      lever = 2.0 * disc->radius / 3.0;
    } else {
      const auto& box = std::get<Box>(b.shape);
      inertia_per_mass = (box.half_x * box.half_x + box.half_y * box.half_y) / 3.0;
      lever = 2.0 * std::sqrt(4.0 * box.half_x * box.half_y / pi) / 3.0;
    }
    b.inv_mass = 1.0 / p.mass;
    b.inv_inertia = 1.0 / (p.mass * inertia_per_mass);
    b.spin_decel = p.friction * settings_.gravity * lever / inertia_per_mass;
    bodies_.push_back(b);
  }
}

SystemState PlanarWorld::step(const SystemState& state, const Control& control, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step duration must be positive");
  if (state.objects.size() != bodies_.size()) throw ConfigError("state does not match the scene object count");
  require_finite(state, control);

  SystemState s = state;
  const int n = std::max(1, settings_.substeps);
  const double h = dt / n;
  for (int k = 0; k < n; ++k) substep(s, control, h);
  s.robot_velocity = {control.vx, control.vy, control.omega};

  require_finite(s, control);
  return s;
}

void PlanarWorld::substep(SystemState& s, const Control& u, double h) const {
  const std::size_t n = bodies_.size();
  const double g = settings_.gravity;

  // Ground friction.
  for (std::size_t i = 0; i < n; ++i) {
    ObjectState& o = s.objects[i];
    if (o.toppled) continue;
    const Body& b = bodies_[i];
    const Vec2 v = o.velocity.linear();
    const double speed = norm(v);
    const double dv = b.friction * g * h;
    if (speed <= dv) {
      o.velocity.vx = 0.0;
      o.velocity.vy = 0.0;
    } else {
      const Vec2 nv = v * ((speed - dv) / speed);
      o.velocity.vx = nv.x;
      o.velocity.vy = nv.y;
    }
    const double dw = b.spin_decel * h;
    const double w = o.velocity.omega;
    o.velocity.omega = std::abs(w) <= dw ? 0.0 : w - std::copysign(dw, w);
  }

  // Contact generation, in a fixed pair order.
  auto shape_circle = [&](std::size_t i) -> Circle {
    return {s.objects[i].pose.position(), std::get<Disc>(bodies_[i].shape).radius};
  };
  auto shape_box = [&](std::size_t i) -> Polygon {
    const auto& box = std::get<Box>(bodies_[i].shape);
    return collision::make_box(s.objects[i].pose, {box.half_x, box.half_y});
  };
  auto is_disc = [&](std::size_t i) { return std::holds_alternative<Disc>(bodies_[i].shape); };
  auto speed_bound = [&](std::size_t i) {
    const Twist2& v = s.objects[i].velocity;
    return norm(v.linear()) + std::abs(v.omega) * bodies_[i].radius;
  };

  std::vector<ContactPoint> contacts;
  auto add_manifold = [&](const Manifold& m, int a, int b, Vec2 center_a, Vec2 kin_lin, double kin_omega,
                          double friction) {
    for (int k = 0; k < m.count; ++k) {
      ContactPoint c;
      c.a = a;
      c.b = b;
      c.normal = m.normal;
      c.separation = m.points[k].separation;
      c.friction = friction;
      const Vec2 p = m.points[k].point;
      c.ra = p - center_a;
      c.rb = p - s.objects[b].pose.position();
      if (a == kKinematic) c.kinematic_velocity = kin_lin + cross(kin_omega, c.ra);
      contacts.push_back(c);
    }
  };

  const Vec2 robot_pos = s.robot.position();
  const Vec2 robot_lin{u.vx, u.vy};
  const double robot_speed = norm(robot_lin) + std::abs(u.omega) * gripper_reach_;
  const auto parts = gripper_polygons(GripperGeometry{gripper_, {}}, s.robot);

  for (std::size_t j = 0; j < n; ++j) {
    if (s.objects[j].toppled) continue;
    const Vec2 cj = s.objects[j].pose.position();
    const double rj = bodies_[j].radius;
    const int bj = static_cast<int>(j);

    // Gripper parts.
    const double margin_r = h * (robot_speed + speed_bound(j)) + settings_.speculative_distance;
    if (norm(cj - robot_pos) <= gripper_reach_ + rj + margin_r) {
      for (const Polygon& part : parts) {
        const Manifold m = is_disc(j) ? collision::collide(part, shape_circle(j), margin_r)
                                      : collision::collide(part, shape_box(j), margin_r);
        add_manifold(m, kKinematic, bj, robot_pos, robot_lin, u.omega, bodies_[j].friction);
      }
    }

    // Walls.
    const double margin_w = h * speed_bound(j) + settings_.speculative_distance;
    for (const Polygon& wall : walls_) {
      const Manifold m = is_disc(j) ? collision::collide(wall, shape_circle(j), margin_w)
                                    : collision::collide(wall, shape_box(j), margin_w);
      add_manifold(m, kKinematic, bj, wall.centroid, {}, 0.0, bodies_[j].friction);
    }

    // Other objects, i < j.
    for (std::size_t i = 0; i < j; ++i) {
      if (s.objects[i].toppled) continue;
      const Vec2 ci = s.objects[i].pose.position();
      const double margin_o = h * (speed_bound(i) + speed_bound(j)) + settings_.speculative_distance;
      if (norm(cj - ci) > bodies_[i].radius + rj + margin_o) continue;
      const double mu = std::sqrt(bodies_[i].friction * bodies_[j].friction);
      Manifold m;
      if (is_disc(i) && is_disc(j)) {
        m = collision::collide(shape_circle(i), shape_circle(j), margin_o);
      } else if (!is_disc(i) && is_disc(j)) {
        m = collision::collide(shape_box(i), shape_circle(j), margin_o);
      } else if (!is_disc(i) && !is_disc(j)) {
        m = collision::collide(shape_box(i), shape_box(j), margin_o);
      } else {
        m = collision::collide(shape_box(j), shape_circle(i), margin_o);
        m.normal = -m.normal;
      }
      add_manifold(m, static_cast<int>(i), bj, ci, {}, 0.0, mu);
    }
  }

  // Effective masses and velocity targets.
  for (ContactPoint& c : contacts) {
    const Vec2 t = perp(c.normal);
    double kn = 0.0;
    double kt = 0.0;
    if (c.a != kKinematic) {
      const Body& ba = bodies_[c.a];
      const double rna = cross(c.ra, c.normal);
      const double rta = cross(c.ra, t);
      kn += ba.inv_mass + ba.inv_inertia * rna * rna;
      kt += ba.inv_mass + ba.inv_inertia * rta * rta;
    }
    const Body& bb = bodies_[c.b];
    const double rnb = cross(c.rb, c.normal);
    const double rtb = cross(c.rb, t);
    kn += bb.inv_mass + bb.inv_inertia * rnb * rnb;
    kt += bb.inv_mass + bb.inv_inertia * rtb * rtb;
    c.normal_mass = 1.0 / kn;
    c.tangent_mass = 1.0 / kt;
    if (c.separation > 0.0) {
      c.target_velocity = -c.separation / h;
    } else {
      c.target_velocity = settings_.baumgarte * std::max(-c.separation - settings_.linear_slop, 0.0) / h;
    }
  }

  // Sequential impulses.
  auto point_velocity = [&](int body, Vec2 r) {
    const Twist2& v = s.objects[body].velocity;
    return v.linear() + cross(v.omega, r);
  };
  auto apply = [&](const ContactPoint& c, Vec2 impulse) {
    if (c.a != kKinematic) {
      const Body& ba = bodies_[c.a];
      Twist2& va = s.objects[c.a].velocity;
      va.vx -= ba.inv_mass * impulse.x;
      va.vy -= ba.inv_mass * impulse.y;
      va.omega -= ba.inv_inertia * cross(c.ra, impulse);
    }
    const Body& bb = bodies_[c.b];
    Twist2& vb = s.objects[c.b].velocity;
    vb.vx += bb.inv_mass * impulse.x;
    vb.vy += bb.inv_mass * impulse.y;
    vb.omega += bb.inv_inertia * cross(c.rb, impulse);
  };
  auto relative_velocity = [&](const ContactPoint& c) {
    const Vec2 va = c.a == kKinematic ? c.kinematic_velocity : point_velocity(c.a, c.ra);
    return point_velocity(c.b, c.rb) - va;
  };

  for (int it = 0; it < settings_.solver_iterations; ++it) {
    for (ContactPoint& c : contacts) {
      const Vec2 t = perp(c.normal);
      // Friction first so the normal constraint has the last word.
      const double vt = dot(relative_velocity(c), t);
      const double max_friction = c.friction * c.normal_impulse;
      const double old_t = c.tangent_impulse;
      c.tangent_impulse = std::clamp(old_t - c.tangent_mass * vt, -max_friction, max_friction);
      apply(c, t * (c.tangent_impulse - old_t));

      const double vn = dot(relative_velocity(c), c.normal);
      const double old_n = c.normal_impulse;
      c.normal_impulse = std::max(old_n + c.normal_mass * (c.target_velocity - vn), 0.0);
      apply(c, c.normal * (c.normal_impulse - old_n));
    }
  }

  // Integration and toppling.
  for (std::size_t i = 0; i < n; ++i) {
    ObjectState& o = s.objects[i];
    if (o.toppled) continue;
    o.pose.x += h * o.velocity.vx;
    o.pose.y += h * o.velocity.vy;
    o.pose.theta = wrap_angle(o.pose.theta + h * o.velocity.omega);
    if (!boundary_.contains(o.pose.position())) {
      o.toppled = true;
      o.velocity = {};
    }
  }
  s.robot.x += h * u.vx;
  s.robot.y += h * u.vy;
  s.robot.theta = wrap_angle(s.robot.theta + h * u.omega);
}

Trajectory rollout(const PlanarWorld& world, const SystemState& x0, const ControlSequence& controls, double dt) {
  if (controls.empty()) throw std::invalid_argument("rollout needs at least one control");
  Trajectory traj;
  traj.reserve(controls.size() + 1);
  traj.push_back(x0);
  for (const Control& u : controls) traj.push_back(world.step(traj.back(), u, dt));
  return traj;
}

}  // namespace contraplan
