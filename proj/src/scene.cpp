#include "contraplan/scene.hpp"

#include <cmath>
#include <string>

#include "contraplan/errors.hpp"

namespace contraplan {

Shape scaled(const Shape& shape, double scale) {
  if (const auto* d = std::get_if<Disc>(&shape)) return Disc{d->radius * scale};
  const auto& b = std::get<Box>(shape);
  return Box{b.half_x * scale, b.half_y * scale};
}

double bounding_radius(const Shape& shape) {
  if (const auto* d = std::get_if<Disc>(&shape)) return d->radius;
  const auto& b = std::get<Box>(shape);
  return std::hypot(b.half_x, b.half_y);
}

void SceneDescription::validate() const {
  if (!(boundary.min.x < boundary.max.x && boundary.min.y < boundary.max.y))
    throw ConfigError("scene boundary is empty");
  if (objects.empty()) throw ConfigError("scene has no objects");
  if (target_object >= objects.size())
    throw ConfigError("target_index " + std::to_string(target_object) + " is out of range");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const ObjectSpec& o = objects[i];
    const std::string where = "object " + std::to_string(i);
    if (const auto* d = std::get_if<Disc>(&o.shape)) {
      if (!(d->radius > 0.0)) throw ConfigError(where + ": radius must be positive");
    } else {
      const auto& b = std::get<Box>(o.shape);
      if (!(b.half_x > 0.0 && b.half_y > 0.0)) throw ConfigError(where + ": half extents must be positive");
    }
    if (!(o.nominal_mass > 0.0)) throw ConfigError(where + ": mass must be positive");
    if (!(o.nominal_friction >= 0.0)) throw ConfigError(where + ": friction must be non-negative");
    if (!boundary.contains(o.nominal_pose.position())) throw ConfigError(where + ": pose lies outside the boundary");
  }
}

SystemState SceneDescription::initial_state() const {
  SystemState s;
  s.robot = robot_start;
  s.robot.theta = wrap_angle(s.robot.theta);
  s.objects.reserve(objects.size());
  for (const ObjectSpec& o : objects) {
    ObjectState os;
    os.pose = o.nominal_pose;
    os.pose.theta = wrap_angle(os.pose.theta);
    s.objects.push_back(os);
  }
  return s;
}

void ParameterBounds::validate() const {
  auto check = [](const Interval& i, const char* name) {
    if (!(i.lower <= i.upper)) throw ConfigError(std::string(name) + " bounds are inverted");
    if (!(i.lower > 0.0)) throw ConfigError(std::string(name) + " lower bound must be positive");
  };
  check(mass, "mass");
  check(friction, "friction");
  check(size_scale, "size_scale");
}

WorldRealization nominal_realization(const SceneDescription& scene) {
  WorldRealization w;
  w.id = 0;
  w.origin = WorldOrigin::nominal;
  for (const ObjectSpec& o : scene.objects) w.objects.push_back({o.nominal_mass, o.nominal_friction, 1.0});
  return w;
}

namespace {
double uniform(const Interval& i, Rng& rng) {
  if (i.lower == i.upper) return i.lower;
  return std::uniform_real_distribution<double>(i.lower, i.upper)(rng);
}
}  // namespace

WorldRealization sample_world_realization(const SceneDescription& scene, const ParameterBounds& bounds, Rng& rng,
                                          int id) {
  WorldRealization w;
  w.id = id;
  w.origin = WorldOrigin::sampled;
  w.objects.reserve(scene.objects.size());
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    ObjectParams p;
    p.mass = uniform(bounds.mass, rng);
    p.friction = uniform(bounds.friction, rng);
    p.size_scale = uniform(bounds.size_scale, rng);
    w.objects.push_back(p);
  }
  return w;
}

std::vector<SystemState> sample_initial_states(const SystemState& x0, const NoiseSpec& noise, std::size_t n,
                                               Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_initial_states needs n >= 1");
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<SystemState> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    SystemState s = x0;
    for (ObjectState& o : s.objects) {
      // Draw unconditionally so the stream layout does not depend on sigma.
      const double dx = unit(rng);
      const double dy = unit(rng);
      const double dt = unit(rng);
      if (o.toppled) continue;
      o.pose.x += noise.sigma_position * dx;
      o.pose.y += noise.sigma_position * dy;
      o.pose.theta = wrap_angle(o.pose.theta + noise.sigma_theta * dt);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace contraplan
