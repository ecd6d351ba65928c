#pragma once

#include <optional>
#include <string_view>

#include "contraplan/metrics.hpp"
#include "contraplan/scene.hpp"
#include "contraplan/state.hpp"

namespace contraplan {

struct ObjectiveWeights {
  double acceleration = 0.001;  // v_a
  double collision = 2.0e9;     // v_c
  double disturbance = 1000.0;  // v_d
  double topple = 2.0e9;        // v_y
  double angular_goal = 0.019;  // v_phi
  double terminal = 1.0e8;      // v_f
  double robust_expected = 2.0;  // v_e
  double robust_maximal = 0.5;   // v_m
  double robust_task = 1.0;      // v_j
  /// Terminal-set threshold on L_tN.
  double alpha = 10.0;
  /// Feasibility threshold on J.
  double beta = 50.0;
  /// Norm used when a desired terminal state is given. Tracks the gripper
  /// pose, with a light pull on object positions.
  DistanceWeights distance{1.0, 0.019, 0.1, 0.0, 0.0, 0.0};

  void validate() const;
  bool operator==(const ObjectiveWeights&) const = default;
};

struct RunningCostTerms {
  double acceleration = 0.0;
  double collision = 0.0;
  double disturbance = 0.0;
  double topple = 0.0;
};

RunningCostTerms running_cost_terms(const SystemState& x_t, const SystemState& x_t1, const Control& u_prev,
                                    const Control& u_t, const SceneDescription& scene);

double running_cost(const SystemState& x_t, const SystemState& x_t1, const Control& u_prev, const Control& u_t,
                    const SceneDescription& scene, const ObjectiveWeights& w);

/// Gripper point G in world coordinates.
Vec2 grasp_point(const SceneDescription& scene, const Pose2& robot);

/// |r_GO|^2 + v_phi * phi^2, phi the angle between the gripper's forward axis
/// and r_GO. The angular term vanishes when |r_GO| < 1e-6 m.
double goal_cost(const SystemState& x_n, const SceneDescription& scene, double angular_weight);

/// |x^d - x|^2 when a desired state is given, the goal cost otherwise.
double terminal_cost(const SystemState& x_n, const SceneDescription& scene, const std::optional<SystemState>& desired,
                     const ObjectiveWeights& w);

/// v_f * L_tN(x_N) + sum_t L_t. The control before u_0 is u_prev.
double trajectory_cost(const Trajectory& states, const ControlSequence& controls, const SceneDescription& scene,
                       const ObjectiveWeights& w, const std::optional<SystemState>& desired = std::nullopt,
                       const Control& u_prev = {});

/// v_e * E_e^2 + v_m * E_m^2 + v_j * J.
double robust_cost(double task_cost, double expected_metric, double maximal_metric, const ObjectiveWeights& w);

enum class FeasibilityReason { feasible, control_bounds, terminal_set, toppled, static_collision, cost_threshold };

std::string_view to_string(FeasibilityReason r);

struct Feasibility {
  bool feasible = false;
  FeasibilityReason reason = FeasibilityReason::feasible;
  explicit operator bool() const { return feasible; }
};

/// Checks control limits, terminal set (L_tN <= alpha), no toppled objects,
/// no static collision anywhere along X, and J < beta, in that order.
Feasibility is_feasible(const Trajectory& states, const ControlSequence& controls, const SceneDescription& scene,
                        const ObjectiveWeights& w, const ControlBounds& bounds,
                        const std::optional<SystemState>& desired = std::nullopt);

/// Same checks with a precomputed task cost J.
Feasibility is_feasible(const Trajectory& states, const ControlSequence& controls, const SceneDescription& scene,
                        const ObjectiveWeights& w, const ControlBounds& bounds,
                        const std::optional<SystemState>& desired, double task_cost);

}  // namespace contraplan
