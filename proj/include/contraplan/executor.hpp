#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contraplan/cost.hpp"
#include "contraplan/graph.hpp"
#include "contraplan/harness.hpp"
#include "contraplan/initial_guess.hpp"
#include "contraplan/metrics.hpp"
#include "contraplan/optimizer.hpp"

namespace contraplan {

enum class Method { ol, rol, cp, cc, ocl };
std::string_view to_string(Method m);
/// Parses "ol", "rol", "cp", "cc" or "ocl" (case-insensitive); ConfigError otherwise.
Method parse_method(std::string_view name);

enum class StepMode { open_loop, mpc };
std::string_view to_string(StepMode m);

struct StepRecord {
  std::size_t index = 0;
  StepMode mode = StepMode::open_loop;
  Control control;
  SystemState true_state;
  /// Observation the MPC step planned from; absent for open-loop steps.
  std::optional<SystemState> observed;
  /// Wall-clock seconds spent planning for this step.
  double planning_time_s = 0.0;
};

/// Inputs handed to one optimizer call, kept for the information audit.
struct PlannerCall {
  std::size_t step = 0;
  std::string kind;
  SystemState input;
};

struct ExecutionLog {
  Method method = Method::ocl;
  std::uint64_t seed = 0;
  SystemState initial_true;
  SystemState initial_observed;
  std::vector<StepRecord> steps;

  ControlSequence planned_controls;
  Trajectory planned_states;
  std::optional<DivergenceProfile> profile;
  std::optional<SegmentPlan> segments;

  /// Wall clock before the first action / after it.
  double planning_time_s = 0.0;
  double execution_time_s = 0.0;
  /// Hardware-independent clocks, see VirtualClock.
  double virtual_planning_time_s = 0.0;
  double virtual_execution_time_s = 0.0;

  std::size_t optimizer_invocations = 0;
  std::size_t open_loop_steps = 0;
  std::size_t mpc_steps = 0;
  double percent_open_loop = 0.0;
  bool success = false;
  std::string failure;
  std::vector<PlannerCall> planner_calls;
};

/// Virtual time model. An optimizer call is charged as its critical path with
/// all rollouts of an iteration in parallel: per_control_step * horizon *
/// (iterations + 1). The initial-guess batch costs per_control_step * horizon.
/// Every applied control costs control_dt.
struct VirtualClock {
  double per_control_step_s = 0.02;
  bool operator==(const VirtualClock&) const = default;
};

struct ExecutorConfig {
  ObjectiveWeights weights;
  OptimizerParams optimizer;
  MetricsConfig metrics;
  EdgeCosts edge_costs;
  PhysicsSettings physics;
  VirtualClock clock;
  InitialGuessParams initial_guess;
  /// Steps run by closed-loop control; 0 means the optimizer horizon N.
  std::size_t task_steps = 0;

  std::size_t steps() const { return task_steps ? task_steps : optimizer.horizon; }
  bool operator==(const ExecutorConfig&) const = default;
};

/// Streams controls with no sensing; appends open_loop records.
void execute_open_loop(const ControlSequence& controls, RealWorldHarness& harness, ExecutionLog& log);

/// Shift-left warm start, padded to horizon with the last control.
ControlSequence warm_start(const ControlSequence& previous, std::size_t horizon);

/// Runs segment_length MPC steps ending at absolute step segment_end. Each
/// step observes, re-optimizes J over the steps left in the segment (warm
/// started from the previous solution), and applies the first control.
/// Returns the last solution's remaining controls.
ControlSequence execute_mpc(const SceneDescription& scene, const ExecutorConfig& config,
                            const std::optional<SystemState>& desired, std::size_t segment_length,
                            std::size_t segment_end, ControlSequence warm, RealWorldHarness& harness,
                            ExecutionLog& log, std::uint64_t seed);

/// Runs a segmented plan: robust segments open loop, the others under MPC
/// toward the planned segment-end state (the task goal for a final segment).
void execute_segments(const ControlSequence& controls, const Trajectory& states, const SegmentPlan& segments,
                      const SceneDescription& scene, const ExecutorConfig& config, RealWorldHarness& harness,
                      ExecutionLog& log, std::uint64_t seed);

/// Open and closed-loop execution: robust plan, segmentation, then open-loop
/// robust segments and MPC on the rest.
ExecutionLog execute_ocl(const SceneDescription& scene, const ExecutorConfig& config, RealWorldHarness& harness,
                         std::uint64_t seed);

/// Target centre inside the capture region, no other object centre inside
/// it, nothing toppled and no static collision.
bool evaluate_success(const SystemState& final_true_state, const SceneDescription& scene);

ExecutionLog run_baseline(Method method, const SceneDescription& scene, const ExecutorConfig& config,
                          RealWorldHarness& harness, std::uint64_t seed);

}  // namespace contraplan
