#include "contraplan/executor.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include "contraplan/audit.hpp"
#include "contraplan/errors.hpp"

namespace contraplan {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double virtual_charge(const ExecutorConfig& config, const OptimizationResult& r, std::size_t horizon) {
  return config.clock.per_control_step_s * static_cast<double>(horizon) * static_cast<double>(r.iterations_used + 1);
}

// Books an optimizer call on the planning clock until the first action, on
// the execution clock afterwards.
void charge(ExecutionLog& log, const ExecutorConfig& config, const OptimizationResult& r, std::size_t horizon,
            double wall) {
  ++log.optimizer_invocations;
  if (log.steps.empty()) {
    log.virtual_planning_time_s += virtual_charge(config, r, horizon);
    log.planning_time_s += wall;
  } else {
    log.virtual_execution_time_s += virtual_charge(config, r, horizon);
    log.execution_time_s += wall;
  }
}

void apply_step(RealWorldHarness& harness, ExecutionLog& log, const Control& u, StepMode mode,
                std::optional<SystemState> observed, double planning_wall) {
  const auto t0 = Clock::now();
  harness.apply(u);
  StepRecord rec;
  rec.index = log.steps.size();
  rec.mode = mode;
  rec.control = u;
  rec.true_state = harness.true_state();
  rec.observed = std::move(observed);
  rec.planning_time_s = planning_wall;
  log.steps.push_back(std::move(rec));
  log.execution_time_s += seconds_since(t0);
  log.virtual_execution_time_s += harness.control_dt();
  if (mode == StepMode::open_loop)
    ++log.open_loop_steps;
  else
    ++log.mpc_steps;
}

void finish(ExecutionLog& log, const RealWorldHarness& harness, const SceneDescription& scene) {
  const std::size_t total = log.steps.size();
  log.percent_open_loop = total == 0 ? 0.0 : 100.0 * static_cast<double>(log.open_loop_steps) / total;
  log.success = log.failure.empty() && evaluate_success(harness.true_state(), scene);
}

// Initial candidate for the first optimizer call of a run.
ControlSequence initial_candidate(const SceneDescription& scene, const ExecutorConfig& config,
                                  const SystemState& observed, ExecutionLog& log, std::uint64_t seed) {
  const std::size_t n = config.optimizer.horizon;
  if (!config.initial_guess.enabled) return ControlSequence(n);
  const auto t0 = Clock::now();
  InitialGuess guess;
  {
    audit::PlannerScope scope;
    guess = reach_initial_guess(observed, scene, config.weights, config.initial_guess, config.optimizer.bounds, n,
                                config.physics, seed, config.optimizer.parallelism);
  }
  log.virtual_planning_time_s += config.clock.per_control_step_s * static_cast<double>(n);
  log.planning_time_s += seconds_since(t0);
  return guess.controls;
}

OptimizerParams plan_params(const ExecutorConfig& config, bool robust, MetricSource source) {
  OptimizerParams p = config.optimizer;
  p.require_robust = robust;
  p.metric_source = source;
  return p;
}

// Up-front plan from the first observation; records it on the log.
OptimizationResult plan_up_front(Method method, const SceneDescription& scene, const ExecutorConfig& config,
                                 const SystemState& observed, ExecutionLog& log, std::uint64_t seed) {
  const std::uint64_t plan_seed = derive_seed(seed, {stream::kPlanner});
  const ControlSequence initial = initial_candidate(scene, config, observed, log, plan_seed);
  const auto t0 = Clock::now();
  OptimizationResult r;
  {
    audit::PlannerScope scope;
    log.planner_calls.push_back({0, std::string(to_string(method)), observed});
    if (method == Method::ol) {
      r = deterministic_sto(observed, initial, scene, config.weights, plan_params(config, false, MetricSource::real),
                            config.physics, std::nullopt, plan_seed);
    } else {
      const MetricSource source = method == Method::cp ? MetricSource::nominal : MetricSource::real;
      r = robust_sto(observed, initial, scene, config.metrics, config.weights, plan_params(config, true, source),
                     config.physics, plan_seed);
    }
  }
  charge(log, config, r, config.optimizer.horizon, seconds_since(t0));
  log.planned_controls = r.controls;
  log.planned_states = r.states;
  if (method != Method::ol) log.profile = r.profile;
  return r;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ol: return "ol";
    case Method::rol: return "rol";
    case Method::cp: return "cp";
    case Method::cc: return "cc";
    case Method::ocl: return "ocl";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "ol") return Method::ol;
  if (s == "rol") return Method::rol;
  if (s == "cp") return Method::cp;
  if (s == "cc") return Method::cc;
  if (s == "ocl") return Method::ocl;
  throw ConfigError("unknown method '" + std::string(name) + "' (expected ol, rol, cp, cc or ocl)");
}

std::string_view to_string(StepMode m) { return m == StepMode::open_loop ? "open_loop" : "mpc"; }

void execute_open_loop(const ControlSequence& controls, RealWorldHarness& harness, ExecutionLog& log) {
  for (const Control& u : controls) apply_step(harness, log, u, StepMode::open_loop, std::nullopt, 0.0);
}

ControlSequence warm_start(const ControlSequence& previous, std::size_t horizon) {
  ControlSequence out;
  out.reserve(horizon);
  for (std::size_t t = 1; t < previous.size() && out.size() < horizon; ++t) out.push_back(previous[t]);
  const Control fill = previous.empty() ? Control{} : previous.back();
  while (out.size() < horizon) out.push_back(fill);
  return out;
}

ControlSequence execute_mpc(const SceneDescription& scene, const ExecutorConfig& config,
                            const std::optional<SystemState>& desired, std::size_t segment_length,
                            std::size_t segment_end, ControlSequence warm, RealWorldHarness& harness,
                            ExecutionLog& log, std::uint64_t seed) {
  if (segment_length < 1) throw std::invalid_argument("MPC segment needs at least one step");
  if (segment_end < segment_length) throw std::invalid_argument("MPC segment ends before it starts");
  const std::size_t first = segment_end - segment_length;
  for (std::size_t t = first; t < segment_end; ++t) {
    const std::size_t horizon = segment_end - t;
    ControlSequence initial = warm;
    initial.resize(horizon, warm.empty() ? Control{} : warm.back());
    const Control u_prev = log.steps.empty() ? Control{} : log.steps.back().control;

    SystemState observed = harness.observe();
    OptimizerParams p = config.optimizer;
    p.horizon = horizon;
    p.require_robust = false;
    const auto t0 = Clock::now();
    OptimizationResult r;
    {
      audit::PlannerScope scope;
      log.planner_calls.push_back({log.steps.size(), "mpc", observed});
      r = deterministic_sto(observed, initial, scene, config.weights, p, config.physics, desired,
                            derive_seed(seed, {stream::kMpc, t}), u_prev);
    }
    const double wall = seconds_since(t0);
    charge(log, config, r, horizon, wall);
    apply_step(harness, log, r.controls.front(), StepMode::mpc, std::move(observed), wall);
    warm = warm_start(r.controls, horizon - 1);
  }
  return warm;
}

void execute_segments(const ControlSequence& controls, const Trajectory& states, const SegmentPlan& segments,
                      const SceneDescription& scene, const ExecutorConfig& config, RealWorldHarness& harness,
                      ExecutionLog& log, std::uint64_t seed) {
  const std::size_t n = controls.size();
  if (states.size() != n + 1) throw std::invalid_argument("planned trajectory must have |U| + 1 states");
  if (!segments.is_contiguous(n)) throw std::invalid_argument("segments must tile the planned horizon");
  log.segments = segments;
  for (const Segment& seg : segments.segments) {
    if (seg.kind == SegmentKind::robust) {
      execute_open_loop(ControlSequence(controls.begin() + seg.start, controls.begin() + seg.end), harness, log);
    } else {
      std::optional<SystemState> desired;
      if (seg.end < n) desired = states[seg.end];
      // The planned controls of the segment seed the first MPC solve.
      const ControlSequence warm(controls.begin() + seg.start, controls.begin() + seg.end);
      execute_mpc(scene, config, desired, seg.end - seg.start, seg.end, warm, harness, log, seed);
    }
  }
}

ExecutionLog execute_ocl(const SceneDescription& scene, const ExecutorConfig& config, RealWorldHarness& harness,
                         std::uint64_t seed) {
  ExecutionLog log;
  log.method = Method::ocl;
  log.seed = seed;
  log.initial_true = harness.true_state();
  log.initial_observed = harness.observe();
  try {
    const OptimizationResult plan = plan_up_front(Method::ocl, scene, config, log.initial_observed, log, seed);
    const SegmentPlan segments = min_cost_path(build_robustness_graph(plan.profile, config.edge_costs));
    execute_segments(plan.controls, plan.states, segments, scene, config, harness, log, seed);
  } catch (const std::exception& e) {
    log.failure = e.what();
  }
  finish(log, harness, scene);
  return log;
}

bool evaluate_success(const SystemState& final_true_state, const SceneDescription& scene) {
  if (final_true_state.toppled_count() > 0) return false;
  if (check_static_collision(scene, final_true_state)) return false;
  for (std::size_t i = 0; i < final_true_state.objects.size(); ++i) {
    const bool inside =
        in_capture_region(scene.gripper, final_true_state.robot, final_true_state.objects[i].pose.position());
    if (i == scene.target_object && !inside) return false;
    if (i != scene.target_object && inside) return false;
  }
  return true;
}

ExecutionLog run_baseline(Method method, const SceneDescription& scene, const ExecutorConfig& config,
                          RealWorldHarness& harness, std::uint64_t seed) {
  if (method == Method::ocl) return execute_ocl(scene, config, harness, seed);

  ExecutionLog log;
  log.method = method;
  log.seed = seed;
  log.initial_true = harness.true_state();
  log.initial_observed = harness.observe();
  try {
    if (method == Method::cc) {
      const std::size_t steps = config.steps();
      const ControlSequence warm =
          initial_candidate(scene, config, log.initial_observed, log, derive_seed(seed, {stream::kPlanner}));
      execute_mpc(scene, config, std::nullopt, steps, steps, warm, harness, log, seed);
    } else {
      const OptimizationResult plan = plan_up_front(method, scene, config, log.initial_observed, log, seed);
      execute_open_loop(plan.controls, harness, log);
    }
  } catch (const std::exception& e) {
    log.failure = e.what();
  }
  finish(log, harness, scene);
  return log;
}

}  // namespace contraplan
