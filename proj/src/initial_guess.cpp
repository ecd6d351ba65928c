#include "contraplan/initial_guess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "contraplan/errors.hpp"
#include "contraplan/random.hpp"

namespace contraplan {

namespace {

double lateral_at(double s, const ReachShape& shape) {
  struct Knot {
    double s, v;
  };
  const Knot knots[] = {{0.0, 0.0},
                        {0.4, shape.lateral_a},
                        {0.6, 0.5 * (shape.lateral_a + shape.lateral_b)},
                        {0.8, 0.5 * shape.lateral_b},
                        {1.0, 0.0}};
  for (std::size_t k = 1; k < std::size(knots); ++k)
    if (s <= knots[k].s) {
      const double f = (s - knots[k - 1].s) / (knots[k].s - knots[k - 1].s);
      return knots[k - 1].v + f * (knots[k].v - knots[k - 1].v);
    }
  return 0.0;
}

}  // namespace

ControlSequence reach_controls(const SceneDescription& scene, const SystemState& x0, std::size_t horizon, double dt,
                               const ReachShape& shape) {
  if (horizon == 0) throw std::invalid_argument("reach needs a positive horizon");
  if (!(dt > 0.0)) throw std::invalid_argument("reach needs a positive dt");
  const Vec2 start = grasp_point(scene, x0.robot);
  const Vec2 goal = x0.objects.at(scene.target_object).pose.position();
  const Vec2 along = goal - start;
  const double len = norm(along);
  const Vec2 side = len > 0.0 ? perp(along * (1.0 / len)) : Vec2{0.0, 1.0};
  auto waypoint = [&](std::size_t t) {
    const double s = static_cast<double>(t) / static_cast<double>(horizon);
    return start + along * s + side * lateral_at(s, shape);
  };
  ControlSequence out(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    const Vec2 v = (waypoint(t + 1) - waypoint(t)) * (1.0 / dt);
    const double s = static_cast<double>(t) / static_cast<double>(horizon);
    const double omega = s < 0.4 - 1e-12 ? shape.turn : (s < 0.8 - 1e-12 ? -shape.turn : 0.0);
    out[t] = {v.x, v.y, omega};
  }
  return out;
}

void InitialGuessParams::validate() const {
  if (candidates < 1) throw ConfigError("initial_guess.candidates must be at least 1");
  if (!(max_lateral >= 0.0) || !(max_turn >= 0.0)) throw ConfigError("initial_guess ranges must be non-negative");
}

InitialGuess reach_initial_guess(const SystemState& x0, const SceneDescription& scene, const ObjectiveWeights& weights,
                                 const InitialGuessParams& params, const ControlBounds& bounds, std::size_t horizon,
                                 const PhysicsSettings& physics, std::uint64_t seed, Parallelism par) {
  params.validate();
  std::vector<ControlSequence> candidates(params.candidates);
  Rng rng = make_rng(seed, {stream::kInitialGuess});
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    ReachShape shape;
    if (k > 0) {
      shape.lateral_a = params.max_lateral * unit(rng);
      shape.lateral_b = params.max_lateral * unit(rng);
      shape.turn = params.max_turn * unit(rng);
    }
    candidates[k] = clamp_controls(reach_controls(scene, x0, horizon, physics.control_dt, shape), bounds);
  }

  const PlanarWorld world(scene, nominal_realization(scene), physics);
  std::vector<double> cost(candidates.size(), std::numeric_limits<double>::infinity());
  for_each_index(candidates.size(), par, [&](std::size_t k) {
    try {
      const Trajectory states = rollout(world, x0, candidates[k], physics.control_dt);
      cost[k] = trajectory_cost(states, candidates[k], scene, weights, std::nullopt);
    } catch (const NumericDomainError&) {
    }
  });

  InitialGuess out;
  out.rollouts = candidates.size();
  out.cost = cost[0];
  for (std::size_t k = 1; k < cost.size(); ++k)
    if (cost[k] < out.cost) {
      out.cost = cost[k];
      out.chosen = k;
    }
  out.controls = std::move(candidates[out.chosen]);
  return out;
}

}  // namespace contraplan
