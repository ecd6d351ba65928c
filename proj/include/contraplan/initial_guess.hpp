#pragma once

#include <cstddef>
#include <cstdint>

#include "contraplan/cost.hpp"
#include "contraplan/parallel.hpp"
#include "contraplan/physics.hpp"
#include "contraplan/state.hpp"

namespace contraplan {

/// Reach motions that carry the grasp point from its start to the target
/// centre along a piecewise-linear path. The path bends sideways by
/// lateral_a at 40% of the horizon and lateral_b / 2 at 80%; the wrist turns
/// at +turn, then -turn, then holds.
struct ReachShape {
  double lateral_a = 0.0;
  double lateral_b = 0.0;
  double turn = 0.0;
};

ControlSequence reach_controls(const SceneDescription& scene, const SystemState& x0, std::size_t horizon, double dt,
                               const ReachShape& shape);

struct InitialGuessParams {
  /// When false the initial candidate is all-zero controls.
  bool enabled = true;
  /// Candidate 0 is the straight reach; the rest are random detours.
  std::size_t candidates = 64;
  double max_lateral = 0.15;
  double max_turn = 0.5;

  void validate() const;
  bool operator==(const InitialGuessParams&) const = default;
};

struct InitialGuess {
  ControlSequence controls;
  double cost = 0.0;
  std::size_t chosen = 0;
  std::size_t rollouts = 0;
};

/// Lowest deterministic cost J among the candidates, rolled out in the
/// nominal world from x0 and clamped to the bounds. Ties go to the lowest
/// candidate index.
InitialGuess reach_initial_guess(const SystemState& x0, const SceneDescription& scene, const ObjectiveWeights& weights,
                                 const InitialGuessParams& params, const ControlBounds& bounds, std::size_t horizon,
                                 const PhysicsSettings& physics, std::uint64_t seed, Parallelism par = {});

}  // namespace contraplan
