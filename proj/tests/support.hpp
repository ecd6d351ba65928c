#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "contraplan/cost.hpp"
#include "contraplan/optimizer.hpp"
#include "contraplan/physics.hpp"
#include "contraplan/random.hpp"
#include "contraplan/scene.hpp"
#include "contraplan/scene_gen.hpp"
#include "contraplan/state.hpp"

namespace contraplan::test {

/// Large empty shelf with one small disc far from the gripper. G sits at the
/// gripper origin so goal geometry is easy to reason about.
inline SceneDescription open_scene(Vec2 target = {0.8, 0.8}, double radius = 0.005) {
  SceneDescription s;
  s.boundary = {{-1.0, -1.0}, {1.0, 1.0}};
  s.robot_start = {0.0, 0.0, 0.0};
  s.grasp_offset = {0.0, 0.0};
  ObjectSpec o;
  o.shape = Disc{radius};
  o.nominal_pose = {target.x, target.y, 0.0};
  s.objects.push_back(o);
  s.target_object = 0;
  return s;
}

/// A disc resting just in front of the palm, between the fingers.
inline SceneDescription palm_push_scene(double gap = 0.002, double radius = 0.02) {
  SceneDescription s = open_scene();
  const double palm_front = s.gripper.parts[0].center.x + s.gripper.parts[0].half_extents.x;
  s.objects[0].shape = Disc{radius};
  s.objects[0].nominal_pose = {palm_front + radius + gap, 0.0, 0.0};
  return s;
}

/// One-step free-space reach: target 0.1 m ahead of G, every control limited
/// to +-0.25 so the best reachable point is 0.05 m short (goal cost 0.0025).
struct ReachToy {
  SceneDescription scene = open_scene({0.1, 0.0});
  ObjectiveWeights weights;
  MetricsConfig metrics;
  OptimizerParams params;

  ReachToy() {
    params.horizon = 1;
    params.samples = 8;
    params.max_iterations = 40;
    params.sampling_variance = {0.05, 0.05, 0.05};
    params.bounds.lower = {-0.25, -0.25, -0.25};
    params.bounds.upper = {0.25, 0.25, 0.25};
  }

  double goal_after(const Control& u) const {
    const PlanarWorld world(scene, nominal_realization(scene));
    return goal_cost(world.step(scene.initial_state(), u, PhysicsSettings{}.control_dt), scene,
                     weights.angular_goal);
  }

  /// Dense grid over all three control components at 0.01 resolution.
  double grid_optimum() const {
    const PlanarWorld world(scene, nominal_realization(scene));
    const SystemState x0 = scene.initial_state();
    double best = 1e300;
    for (int i = -25; i <= 25; ++i)
      for (int j = -25; j <= 25; ++j)
        for (int k = -25; k <= 25; ++k) {
          const Control u{0.01 * i, 0.01 * j, 0.01 * k};
          best = std::min(best, goal_cost(world.step(x0, u, 0.2), scene, weights.angular_goal));
        }
    return best;
  }

  double optimized(std::uint64_t seed) const {
    const OptimizationResult r =
        robust_sto(scene.initial_state(), ControlSequence(1), scene, metrics, weights, params, {}, seed);
    return goal_cost(r.states.back(), scene, weights.angular_goal);
  }
};

/// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::uint64_t seed() { return rng_(); }

  Control control(double scale) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
  ControlSequence controls(std::size_t n, double scale) {
    ControlSequence u(n);
    for (Control& c : u) c = control(scale);
    return u;
  }

  /// Generated shelf scene with a random object count.
  SceneDescription scene(std::size_t min_objects = 3, std::size_t max_objects = 6) {
    GeneratorParams p;
    p.object_count = min_objects + index(max_objects - min_objects + 1);
    Rng r(seed());
    return generate_random_scene(p, r);
  }

  /// Random state of a scene: objects jittered, some with velocities.
  SystemState state(const SceneDescription& scene, double jitter = 0.0) {
    SystemState s = scene.initial_state();
    for (ObjectState& o : s.objects) {
      o.pose.x += uniform(-jitter, jitter);
      o.pose.y += uniform(-jitter, jitter);
    }
    return s;
  }

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

}  // namespace contraplan::test
