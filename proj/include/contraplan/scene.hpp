#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "contraplan/geometry.hpp"
#include "contraplan/random.hpp"
#include "contraplan/state.hpp"

namespace contraplan {

struct Disc {
  double radius = 0.0;
  bool operator==(const Disc&) const = default;
};

struct Box {
  double half_x = 0.0;
  double half_y = 0.0;
  bool operator==(const Box&) const = default;
};

using Shape = std::variant<Disc, Box>;

/// Shape with every dimension multiplied by scale.
Shape scaled(const Shape& shape, double scale);
/// Radius of the smallest origin-centred disc containing the shape.
double bounding_radius(const Shape& shape);

struct ObjectSpec {
  Shape shape = Disc{0.03};
  double nominal_mass = 0.65;
  double nominal_friction = 0.3;
  Pose2 nominal_pose;

  bool operator==(const ObjectSpec&) const = default;
};

struct Wall {
  Vec2 from;
  Vec2 to;
  bool operator==(const Wall&) const = default;
};

/// One rigid box of the gripper body, in the gripper frame.
struct GripperPart {
  Vec2 center;
  Vec2 half_extents;
  bool operator==(const GripperPart&) const = default;
};

/// U-shaped planar gripper: a palm and two fingers opening along +x.
struct GripperGeometry {
  std::vector<GripperPart> parts{
      {{-0.02, 0.0}, {0.01, 0.05}},
      {{0.03, 0.042}, {0.04, 0.008}},
      {{0.03, -0.042}, {0.04, 0.008}},
  };
  /// Region between the fingers (gripper frame) that counts as "in hand".
  Rect capture{{-0.01, -0.034}, {0.07, 0.034}};

  bool operator==(const GripperGeometry&) const = default;
};

struct SceneDescription {
  Rect boundary{{0.0, -0.3}, {0.6, 0.3}};
  std::vector<Wall> walls;
  std::vector<ObjectSpec> objects;
  Pose2 robot_start;
  std::size_t target_object = 0;
  /// Point G in the gripper frame used by the goal cost.
  Vec2 grasp_offset{0.03, 0.0};
  GripperGeometry gripper;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
  /// Scene state at rest with every object at its nominal pose.
  SystemState initial_state() const;
  bool operator==(const SceneDescription&) const = default;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool operator==(const Interval&) const = default;
};

struct ParameterBounds {
  Interval mass{0.5, 0.8};
  Interval friction{0.2, 0.4};
  Interval size_scale{0.95, 1.05};

  void validate() const;
  bool operator==(const ParameterBounds&) const = default;
};

struct ObjectParams {
  double mass = 0.0;
  double friction = 0.0;
  double size_scale = 1.0;
  bool operator==(const ObjectParams&) const = default;
};

/// Who produced a realization. Planner code only ever builds nominal or
/// sampled realizations; hidden ones belong to the execution harness.
enum class WorldOrigin { nominal, sampled, hidden };

/// One concrete assignment of per-object physics parameters.
struct WorldRealization {
  int id = 0;
  WorldOrigin origin = WorldOrigin::nominal;
  std::vector<ObjectParams> objects;

  bool operator==(const WorldRealization&) const = default;
};

WorldRealization nominal_realization(const SceneDescription& scene);

/// Independent uniform draws of mass, friction and size scale per object.
WorldRealization sample_world_realization(const SceneDescription& scene, const ParameterBounds& bounds,
                                          Rng& rng, int id = 1);

/// Gaussian noise on object poses. The robot pose is never perturbed.
struct NoiseSpec {
  double sigma_position = 0.01;
  double sigma_theta = 5.0 * 3.141592653589793 / 180.0;
  bool operator==(const NoiseSpec&) const = default;
};

std::vector<SystemState> sample_initial_states(const SystemState& x0, const NoiseSpec& noise, std::size_t n,
                                               Rng& rng);

}  // namespace contraplan
