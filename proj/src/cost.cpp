#include "contraplan/cost.hpp"

#include <algorithm>
#include <cmath>

#include "contraplan/errors.hpp"
#include "contraplan/physics.hpp"

namespace contraplan {

void ObjectiveWeights::validate() const {
  const double all[] = {acceleration,    collision,      disturbance,   topple, angular_goal, terminal,
                        robust_expected, robust_maximal, robust_task};
  for (double v : all)
    if (!(v >= 0.0)) throw ConfigError("objective weights must be non-negative");
  if (!(alpha > 0.0) || !(beta > 0.0)) throw ConfigError("alpha and beta must be positive");
  distance.validate();
}

RunningCostTerms running_cost_terms(const SystemState& x_t, const SystemState& x_t1, const Control& u_prev,
                                    const Control& u_t, const SceneDescription& scene) {
  auto sq = [](double v) { return v * v; };
  RunningCostTerms c;
  for (std::size_t d = 0; d < Control::kDim; ++d) c.acceleration += sq(u_t[d] - u_prev[d]);
  for (std::size_t i = 0; i < x_t.objects.size() && i < x_t1.objects.size(); ++i) {
    const ObjectState& a = x_t.objects[i];
    const ObjectState& b = x_t1.objects[i];
    c.disturbance += sq(b.pose.x - a.pose.x) + sq(b.pose.y - a.pose.y) + sq(wrap_angle(b.pose.theta - a.pose.theta)) +
                     sq(b.velocity.vx - a.velocity.vx) + sq(b.velocity.vy - a.velocity.vy) +
                     sq(b.velocity.omega - a.velocity.omega);
  }
  c.collision = check_static_collision(scene, x_t1) ? 1.0 : 0.0;
  c.topple = static_cast<double>(x_t1.toppled_count());
  return c;
}

double running_cost(const SystemState& x_t, const SystemState& x_t1, const Control& u_prev, const Control& u_t,
                    const SceneDescription& scene, const ObjectiveWeights& w) {
  const RunningCostTerms c = running_cost_terms(x_t, x_t1, u_prev, u_t, scene);
  return w.acceleration * c.acceleration + w.collision * c.collision + w.disturbance * c.disturbance +
         w.topple * c.topple;
}

Vec2 grasp_point(const SceneDescription& scene, const Pose2& robot) { return robot.transform(scene.grasp_offset); }

double goal_cost(const SystemState& x_n, const SceneDescription& scene, double angular_weight) {
  const Vec2 g = grasp_point(scene, x_n.robot);
  const Vec2 o = x_n.objects.at(scene.target_object).pose.position();
  const Vec2 r = o - g;
  const double dist = norm(r);
  double cost = dist * dist;
  const Vec2 bearing = o - x_n.robot.position();
  const double reach = norm(bearing);
  if (reach >= 1e-6) {
    const Vec2 forward{std::cos(x_n.robot.theta), std::sin(x_n.robot.theta)};
    const double phi = std::acos(std::clamp(dot(forward, bearing * (1.0 / reach)), -1.0, 1.0));
    cost += angular_weight * phi * phi;
  }
  return cost;
}

double terminal_cost(const SystemState& x_n, const SceneDescription& scene, const std::optional<SystemState>& desired,
                     const ObjectiveWeights& w) {
  if (desired) {
    const double d = state_distance(*desired, x_n, w.distance);
    return d * d;
  }
  return goal_cost(x_n, scene, w.angular_goal);
}

double trajectory_cost(const Trajectory& states, const ControlSequence& controls, const SceneDescription& scene,
                       const ObjectiveWeights& w, const std::optional<SystemState>& desired, const Control& u_prev) {
  if (states.size() != controls.size() + 1) throw std::invalid_argument("trajectory must have |U| + 1 states");
  double running = 0.0;
  Control prev = u_prev;
  for (std::size_t t = 0; t < controls.size(); ++t) {
    running += running_cost(states[t], states[t + 1], prev, controls[t], scene, w);
    prev = controls[t];
  }
  return w.terminal * terminal_cost(states.back(), scene, desired, w) + running;
}

double robust_cost(double task_cost, double expected_metric, double maximal_metric, const ObjectiveWeights& w) {
  return w.robust_expected * expected_metric * expected_metric + w.robust_maximal * maximal_metric * maximal_metric +
         w.robust_task * task_cost;
}

std::string_view to_string(FeasibilityReason r) {
  switch (r) {
    case FeasibilityReason::feasible: return "feasible";
    case FeasibilityReason::control_bounds: return "control bounds";
    case FeasibilityReason::terminal_set: return "terminal set";
    case FeasibilityReason::toppled: return "toppled object";
    case FeasibilityReason::static_collision: return "static collision";
    case FeasibilityReason::cost_threshold: return "cost threshold";
  }
  return "unknown";
}

Feasibility is_feasible(const Trajectory& states, const ControlSequence& controls, const SceneDescription& scene,
                        const ObjectiveWeights& w, const ControlBounds& bounds,
                        const std::optional<SystemState>& desired) {
  return is_feasible(states, controls, scene, w, bounds, desired, trajectory_cost(states, controls, scene, w, desired));
}

Feasibility is_feasible(const Trajectory& states, const ControlSequence& controls, const SceneDescription& scene,
                        const ObjectiveWeights& w, const ControlBounds& bounds,
                        const std::optional<SystemState>& desired, double task_cost) {
  auto fail = [](FeasibilityReason r) { return Feasibility{false, r}; };
  if (!bounds.contains(controls)) return fail(FeasibilityReason::control_bounds);
  if (!(terminal_cost(states.back(), scene, desired, w) <= w.alpha)) return fail(FeasibilityReason::terminal_set);
  for (const auto& x : states)
    if (x.toppled_count() > 0) return fail(FeasibilityReason::toppled);
  for (const auto& x : states)
    if (check_static_collision(scene, x)) return fail(FeasibilityReason::static_collision);
  if (!(task_cost < w.beta)) return fail(FeasibilityReason::cost_threshold);
  return {true, FeasibilityReason::feasible};
}

}  // namespace contraplan
