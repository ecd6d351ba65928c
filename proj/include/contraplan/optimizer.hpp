#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "contraplan/cost.hpp"
#include "contraplan/metrics.hpp"
#include "contraplan/parallel.hpp"
#include "contraplan/physics.hpp"

namespace contraplan {

/// Which divergence metrics feed the robust objective and the loop guard.
enum class MetricSource { real, nominal };

struct OptimizerParams {
  std::size_t samples = 4;  // S
  Control sampling_variance{0.4, 0.4, 0.4};  // nu, per control dimension
  std::size_t max_iterations = 10;  // I_max
  std::size_t horizon = 5;  // N
  bool require_robust = true;
  MetricSource metric_source = MetricSource::real;
  ControlBounds bounds;
  Parallelism parallelism;

  void validate() const;
  bool operator==(const OptimizerParams&) const = default;
};

struct OptimizationResult {
  ControlSequence controls;
  Trajectory states;
  /// Empty for the deterministic optimizer.
  DivergenceProfile profile;
  /// Incumbent objective after evaluation of U_init and after every iteration.
  std::vector<double> cost_history;
  /// Objective of each accepted update, in order.
  std::vector<double> accepted_costs;
  double task_cost = 0.0;
  double objective = 0.0;
  bool feasible = false;
  FeasibilityReason feasibility_reason = FeasibilityReason::feasible;
  bool robust = false;
  std::size_t iterations_used = 0;
  std::size_t candidates_evaluated = 0;
  std::size_t rollouts_evaluated = 0;
  /// Control steps simulated, i.e. rollouts times horizon.
  std::size_t physics_steps = 0;

  bool operator==(const OptimizationResult&) const = default;
};

/// N i.i.d. draws from N(0, diag(nu)).
ControlSequence sample_control_perturbation(const Control& variance, std::size_t horizon, Rng& rng);

/// Greedy sampling-based optimization of J_R = v_e E_e^2 + v_m E_m^2 + v_j J.
/// Iterates while fewer than I_max iterations ran and the incumbent is
/// infeasible or its full-path expected metric exceeds one. Every candidate
/// is clamped to the control bounds; ties between samples break toward the
/// lowest sample index.
OptimizationResult robust_sto(const SystemState& x0, const ControlSequence& initial, const SceneDescription& scene,
                              const MetricsConfig& metrics, const ObjectiveWeights& weights,
                              const OptimizerParams& params, const PhysicsSettings& physics, std::uint64_t seed);

/// The same loop on the deterministic objective J with no metric rollouts;
/// stops as soon as the incumbent is feasible.
OptimizationResult deterministic_sto(const SystemState& x0, const ControlSequence& initial,
                                     const SceneDescription& scene, const ObjectiveWeights& weights,
                                     const OptimizerParams& params, const PhysicsSettings& physics,
                                     const std::optional<SystemState>& desired, std::uint64_t seed,
                                     const Control& u_prev = {});

}  // namespace contraplan
