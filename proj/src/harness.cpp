#include "contraplan/harness.hpp"

#include "contraplan/audit.hpp"

namespace contraplan {

RealWorldHarness::RealWorldHarness(const SceneDescription& scene, WorldRealization hidden, ObservationNoise noise,
                                   PhysicsSettings physics, std::uint64_t seed)
    : world_(scene, [&] {
        hidden.origin = WorldOrigin::hidden;
        return hidden;
      }(), physics),
      state_(scene.initial_state()),
      noise_(noise),
      observation_rng_(make_rng(seed, {stream::kObservation})),
      dt_(physics.control_dt) {}

RealWorldHarness RealWorldHarness::sample(const SceneDescription& scene, const ParameterBounds& bounds,
                                          ObservationNoise noise, PhysicsSettings physics, std::uint64_t seed) {
  Rng rng = make_rng(seed, {stream::kHarness});
  return RealWorldHarness(scene, sample_world_realization(scene, bounds, rng, -1), noise, physics, seed);
}

SystemState RealWorldHarness::observe() {
  std::normal_distribution<double> unit(0.0, 1.0);
  SystemState obs = state_;
  for (ObjectState& o : obs.objects) {
    const double dx = unit(observation_rng_);
    const double dy = unit(observation_rng_);
    const double dt = unit(observation_rng_);
    if (o.toppled) continue;
    o.pose.x += noise_.sigma_position * dx;
    o.pose.y += noise_.sigma_position * dy;
    o.pose.theta = wrap_angle(o.pose.theta + noise_.sigma_theta * dt);
  }
  return obs;
}

void RealWorldHarness::apply(const Control& u) {
  state_ = world_.step(state_, u, dt_);
  ++steps_;
}

const WorldRealization& RealWorldHarness::hidden_realization() const {
  audit::record_hidden_read();
  return world_.realization();
}

}  // namespace contraplan
