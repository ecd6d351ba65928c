#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "contraplan/geometry.hpp"

namespace contraplan {

struct ObjectState {
  Pose2 pose;
  Twist2 velocity;
  bool toppled = false;

  bool operator==(const ObjectState&) const = default;
};

/// Poses and velocities of the gripper and every movable object at one instant.
struct SystemState {
  Pose2 robot;
  Twist2 robot_velocity;
  std::vector<ObjectState> objects;

  std::size_t toppled_count() const;
  bool operator==(const SystemState&) const = default;
};

/// Commanded planar gripper velocity (world frame), held for one control period.
struct Control {
  static constexpr std::size_t kDim = 3;

  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;

  double& operator[](std::size_t i) { return i == 0 ? vx : (i == 1 ? vy : omega); }
  double operator[](std::size_t i) const { return i == 0 ? vx : (i == 1 ? vy : omega); }
  bool operator==(const Control&) const = default;
};

using ControlSequence = std::vector<Control>;
using Trajectory = std::vector<SystemState>;

struct ControlBounds {
  Control lower{-3.141592653589793, -3.141592653589793, -3.141592653589793};
  Control upper{3.141592653589793, 3.141592653589793, 3.141592653589793};

  bool contains(const Control& u) const;
  bool contains(const ControlSequence& seq) const;
  bool operator==(const ControlBounds&) const = default;
};

Control clamp(const Control& u, const ControlBounds& bounds);
ControlSequence clamp_controls(const ControlSequence& seq, const ControlBounds& bounds);

}  // namespace contraplan
