#pragma once

#include <cstddef>
#include <cstdint>

#include "contraplan/physics.hpp"
#include "contraplan/random.hpp"
#include "contraplan/scene.hpp"

namespace contraplan {

/// Gaussian noise on observed object poses; the robot is observed exactly.
struct ObservationNoise {
  double sigma_position = 0.005;
  double sigma_theta = 2.0 * 3.141592653589793 / 180.0;
  bool operator==(const ObservationNoise&) const = default;
};

/// Simulated "real world": a hidden parameter realization the planner never
/// sees, the true state, and a noisy observation channel.
class RealWorldHarness {
 public:
  RealWorldHarness(const SceneDescription& scene, WorldRealization hidden, ObservationNoise noise,
                   PhysicsSettings physics, std::uint64_t seed);

  /// Hidden world drawn uniformly from the bounds with the harness seed.
  static RealWorldHarness sample(const SceneDescription& scene, const ParameterBounds& bounds,
                                 ObservationNoise noise, PhysicsSettings physics, std::uint64_t seed);

  SystemState observe();
  void apply(const Control& u);

  const SystemState& true_state() const { return state_; }
  std::size_t steps_applied() const { return steps_; }
  double control_dt() const { return dt_; }
  /// Audited: every call is counted, and flagged when made from planner code.
  const WorldRealization& hidden_realization() const;

 private:
  PlanarWorld world_;
  SystemState state_;
  ObservationNoise noise_;
  Rng observation_rng_;
  double dt_;
  std::size_t steps_ = 0;
};

}  // namespace contraplan
