#pragma once

#include <cstddef>

#include "contraplan/random.hpp"
#include "contraplan/scene.hpp"

namespace contraplan {

/// Random shelf scenes: back wall at boundary max x, side wall at max y,
/// target deep on the shelf, at least min_blockers objects on the straight
/// line from the start grasp point to the target.
struct GeneratorParams {
  std::size_t object_count = 5;
  std::size_t max_objects = 10;
  std::size_t min_blockers = 2;
  /// Rejection-sampling draws allowed per object.
  std::size_t max_attempts = 1000;

  Rect boundary{{0.0, -0.3}, {0.6, 0.3}};
  Pose2 robot_start{0.05, 0.0, 0.0};
  Interval target_x{0.32, 0.42};
  Interval target_y{-0.06, 0.06};
  Interval target_radius{0.02, 0.026};
  Interval target_half{0.016, 0.022};
  Interval blocker_radius{0.022, 0.034};
  Interval blocker_half{0.018, 0.03};
  /// Blocker centres as a fraction of the grasp-point to target distance.
  Interval blocker_fraction{0.25, 0.8};
  double blocker_lateral = 0.012;
  /// Free objects are placed uniformly in this region.
  Rect clutter_region{{0.15, -0.25}, {0.55, 0.25}};
  double clearance = 0.005;
  double box_probability = 0.5;
  /// Nominal mass and friction of every object.
  double mass = 0.65;
  double friction = 0.3;

  void validate() const;
  bool operator==(const GeneratorParams&) const = default;
};

/// Throws GenerationError when placement fails within max_attempts draws.
SceneDescription generate_random_scene(const GeneratorParams& params, Rng& rng);

/// Indices of objects whose footprint the segment from -> to crosses.
std::vector<std::size_t> ray_blockers(const SceneDescription& scene, Vec2 from, Vec2 to);

/// Whether any two object footprints, or an object and the gripper or a wall,
/// come closer than clearance.
bool has_overlap(const SceneDescription& scene, double clearance = 0.0);

}  // namespace contraplan
