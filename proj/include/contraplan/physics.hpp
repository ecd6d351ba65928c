#pragma once

#include <cstddef>
#include <vector>

#include "contraplan/collision.hpp"
#include "contraplan/scene.hpp"
#include "contraplan/state.hpp"

namespace contraplan {

struct PhysicsSettings {
  /// Control duration in seconds.
  double control_dt = 0.2;
  int substeps = 10;
  int solver_iterations = 10;
  double gravity = 9.81;
  /// Fraction of penetration removed per substep.
  double baumgarte = 0.2;
  double linear_slop = 0.0005;
  /// Extra distance at which separated pairs already produce contacts.
  double speculative_distance = 0.002;
  /// Walls are simulated as boxes of this half-thickness around their segment.
  double wall_half_thickness = 0.005;

  bool operator==(const PhysicsSettings&) const = default;
};

/// Deterministic planar rigid-body world: a kinematic gripper pushing
/// dynamic discs and boxes with impulse contacts, Coulomb friction and ground
/// friction. Immutable after construction and safe to share across threads.
class PlanarWorld {
 public:
  PlanarWorld(const SceneDescription& scene, const WorldRealization& realization, PhysicsSettings settings = {});

  /// Advances the state by dt seconds under a constant gripper velocity.
  /// Throws NumericDomainError on non-finite state or control components.
  SystemState step(const SystemState& state, const Control& control, double dt) const;

  const WorldRealization& realization() const { return realization_; }
  const PhysicsSettings& settings() const { return settings_; }
  std::size_t object_count() const { return bodies_.size(); }

 private:
  struct Body {
    Shape shape;
    double inv_mass = 0.0;
    double inv_inertia = 0.0;
    double friction = 0.0;
    double radius = 0.0;
    /// Angular deceleration from ground friction, rad/s^2.
    double spin_decel = 0.0;
  };

  void substep(SystemState& s, const Control& u, double h) const;

  Rect boundary_;
  std::vector<collision::Polygon> walls_;
  std::vector<GripperPart> gripper_;
  double gripper_reach_ = 0.0;
  std::vector<Body> bodies_;
  WorldRealization realization_;
  PhysicsSettings settings_;
};

/// X = [x0, ..., xN] with x_{t+1} = world.step(x_t, u_t, dt).
Trajectory rollout(const PlanarWorld& world, const SystemState& x0, const ControlSequence& controls, double dt);

/// True iff the gripper body strictly overlaps a wall segment or reaches
/// strictly outside the scene boundary. Touching at zero clearance is free.
bool check_static_collision(const SceneDescription& scene, const SystemState& state);

/// Gripper body boxes in world coordinates.
std::vector<collision::Polygon> gripper_polygons(const GripperGeometry& gripper, const Pose2& pose);

/// Whether a world point lies inside the gripper capture region.
bool in_capture_region(const GripperGeometry& gripper, const Pose2& pose, Vec2 point);

}  // namespace contraplan
