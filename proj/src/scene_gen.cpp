#include "contraplan/scene_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "contraplan/collision.hpp"
#include "contraplan/errors.hpp"
#include "contraplan/physics.hpp"

namespace contraplan {

namespace {

double draw(const Interval& i, Rng& rng) {
  if (i.lower == i.upper) return i.lower;
  return std::uniform_real_distribution<double>(i.lower, i.upper)(rng);
}

Shape draw_shape(const Interval& radius, const Interval& half, double box_probability, Rng& rng) {
  const bool box = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < box_probability;
  if (!box) return Disc{draw(radius, rng)};
  return Box{draw(half, rng), draw(half, rng)};
}

using Footprint = std::variant<collision::Circle, collision::Polygon>;

Footprint footprint(const ObjectSpec& o) {
  if (const auto* d = std::get_if<Disc>(&o.shape)) return collision::Circle{o.nominal_pose.position(), d->radius};
  const auto& b = std::get<Box>(o.shape);
  return collision::make_box(o.nominal_pose, {b.half_x, b.half_y});
}

bool near(const Footprint& a, const Footprint& b, double clearance) {
  // Shapes closer than the margin produce a contact.
  const double margin = std::max(clearance, 1e-12);
  if (const auto* ca = std::get_if<collision::Circle>(&a)) {
    if (const auto* cb = std::get_if<collision::Circle>(&b)) return collision::collide(*ca, *cb, margin).count > 0;
    return collision::collide(std::get<collision::Polygon>(b), *ca, margin).count > 0;
  }
  const auto& pa = std::get<collision::Polygon>(a);
  if (const auto* cb = std::get_if<collision::Circle>(&b)) return collision::collide(pa, *cb, margin).count > 0;
  return collision::collide(pa, std::get<collision::Polygon>(b), margin).count > 0;
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + ab * t));
}

bool crosses(const ObjectSpec& o, Vec2 from, Vec2 to) {
  if (const auto* d = std::get_if<Disc>(&o.shape)) return segment_distance(o.nominal_pose.position(), from, to) < d->radius;
  const auto& b = std::get<Box>(o.shape);
  return collision::separation(collision::make_box(o.nominal_pose, {b.half_x, b.half_y}), from, to) < 0.0;
}

bool fits(const SceneDescription& scene, const ObjectSpec& candidate, double clearance) {
  const Footprint f = footprint(candidate);
  const double r = bounding_radius(candidate.shape);
  const Vec2 c = candidate.nominal_pose.position();
  const Rect& b = scene.boundary;
  if (c.x - r < b.min.x + clearance || c.x + r > b.max.x - clearance || c.y - r < b.min.y + clearance ||
      c.y + r > b.max.y - clearance)
    return false;
  for (const auto& g : gripper_polygons(scene.gripper, scene.robot_start))
    if (near(f, g, clearance)) return false;
  for (const ObjectSpec& o : scene.objects)
    if (near(f, footprint(o), clearance)) return false;
  return true;
}

}  // namespace

void GeneratorParams::validate() const {
  if (max_objects < 3) throw ConfigError("max_objects must be at least 3");
  if (object_count < 3 || object_count > max_objects)
    throw ConfigError("object_count " + std::to_string(object_count) + " must lie in [3, " +
                      std::to_string(max_objects) + "]");
  if (min_blockers + 1 > object_count) throw ConfigError("object_count leaves no room for the blockers");
  if (max_attempts == 0) throw ConfigError("max_attempts must be positive");
  if (!(mass > 0.0) || !(friction >= 0.0)) throw ConfigError("generator mass/friction out of range");
  for (const Interval* i : {&target_x, &target_y, &target_radius, &target_half, &blocker_radius, &blocker_half,
                            &blocker_fraction})
    if (!(i->lower <= i->upper)) throw ConfigError("generator interval is inverted");
  if (!(clearance >= 0.0)) throw ConfigError("clearance must be non-negative");
}

SceneDescription generate_random_scene(const GeneratorParams& params, Rng& rng) {
  params.validate();
  SceneDescription scene;
  scene.boundary = params.boundary;
  const Rect& b = params.boundary;
  scene.walls = {Wall{{b.max.x, b.min.y}, {b.max.x, b.max.y}}, Wall{{b.min.x, b.max.y}, {b.max.x, b.max.y}}};
  scene.robot_start = params.robot_start;
  const Vec2 grasp = params.robot_start.transform(scene.grasp_offset);

  auto place = [&](auto&& propose) {
    for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
      ObjectSpec o = propose();
      o.nominal_mass = params.mass;
      o.nominal_friction = params.friction;
      if (fits(scene, o, params.clearance)) {
        scene.objects.push_back(o);
        return;
      }
    }
    throw GenerationError("placement of object " + std::to_string(scene.objects.size()) + " failed after " +
                          std::to_string(params.max_attempts) + " attempts");
  };
  auto angle = [&rng] { return std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng); };

  place([&] {
    ObjectSpec o;
    o.shape = draw_shape(params.target_radius, params.target_half, params.box_probability, rng);
    o.nominal_pose = {draw(params.target_x, rng), draw(params.target_y, rng), angle()};
    return o;
  });
  scene.target_object = 0;
  const Vec2 target = scene.objects[0].nominal_pose.position();
  const Vec2 ray = target - grasp;
  const Vec2 side = perp(ray * (1.0 / norm(ray)));

  for (std::size_t k = 0; k < params.min_blockers; ++k) {
    place([&] {
      ObjectSpec o;
      o.shape = draw_shape(params.blocker_radius, params.blocker_half, params.box_probability, rng);
      // Blocker k is drawn from the k-th slice of the fraction interval.
      const Interval& fr = params.blocker_fraction;
      const double width = (fr.upper - fr.lower) / static_cast<double>(params.min_blockers);
      const double f = draw({fr.lower + width * static_cast<double>(k), fr.lower + width * static_cast<double>(k + 1)}, rng);
      const double lateral = draw({-params.blocker_lateral, params.blocker_lateral}, rng);
      const Vec2 c = grasp + ray * f + side * lateral;
      o.nominal_pose = {c.x, c.y, angle()};
      return o;
    });
  }
  while (scene.objects.size() < params.object_count) {
    place([&] {
      ObjectSpec o;
      o.shape = draw_shape(params.blocker_radius, params.blocker_half, params.box_probability, rng);
      const Rect& r = params.clutter_region;
      o.nominal_pose = {draw({r.min.x, r.max.x}, rng), draw({r.min.y, r.max.y}, rng), angle()};
      return o;
    });
  }

  const auto blockers = ray_blockers(scene, grasp, target);
  if (blockers.size() < params.min_blockers)
    throw GenerationError("generated scene has only " + std::to_string(blockers.size()) + " blockers");
  scene.validate();
  return scene;
}

std::vector<std::size_t> ray_blockers(const SceneDescription& scene, Vec2 from, Vec2 to) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scene.objects.size(); ++i)
    if (i != scene.target_object && crosses(scene.objects[i], from, to)) out.push_back(i);
  return out;
}

bool has_overlap(const SceneDescription& scene, double clearance) {
  std::vector<Footprint> f;
  for (const ObjectSpec& o : scene.objects) f.push_back(footprint(o));
  const auto gripper = gripper_polygons(scene.gripper, scene.robot_start);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (near(f[i], f[j], clearance)) return true;
    for (const auto& g : gripper)
      if (near(f[i], g, clearance)) return true;
    const Vec2 c = scene.objects[i].nominal_pose.position();
    const double r = bounding_radius(scene.objects[i].shape);
    for (const Wall& w : scene.walls)
      if (segment_distance(c, w.from, w.to) < r + clearance) return true;
  }
  return false;
}

}  // namespace contraplan
