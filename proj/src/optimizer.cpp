#include "contraplan/optimizer.hpp"

#include <cmath>
#include <limits>

#include "contraplan/errors.hpp"

namespace contraplan {

void OptimizerParams::validate() const {
  if (samples < 1) throw ConfigError("optimizer needs S >= 1");
  if (horizon < 1) throw ConfigError("optimizer needs N >= 1");
  for (std::size_t d = 0; d < Control::kDim; ++d) {
    if (!(sampling_variance[d] >= 0.0)) throw ConfigError("sampling variance must be non-negative");
    if (!(bounds.lower[d] <= bounds.upper[d])) throw ConfigError("control bounds are inverted");
  }
}

ControlSequence sample_control_perturbation(const Control& variance, std::size_t horizon, Rng& rng) {
  std::normal_distribution<double> unit(0.0, 1.0);
  ControlSequence delta(horizon);
  for (Control& u : delta)
    for (std::size_t d = 0; d < Control::kDim; ++d) {
      const double z = unit(rng);
      u[d] = variance[d] > 0.0 ? std::sqrt(variance[d]) * z : 0.0;
    }
  return delta;
}

namespace {

struct Candidate {
  ControlSequence controls;
  Trajectory states;
  DivergenceProfile profile;
  double task_cost = 0.0;
  double objective = std::numeric_limits<double>::infinity();
  Feasibility feasibility;
  double guard_metric = 0.0;
  std::size_t rollouts = 0;
};

// Evaluates one control sequence; the strategy decides which objective.
template <class Evaluate>
OptimizationResult optimize(const ControlSequence& initial, const OptimizerParams& params, std::uint64_t seed,
                            bool robust_guard, Evaluate&& evaluate) {
  params.validate();
  if (initial.size() != params.horizon) throw std::invalid_argument("initial controls must have length N");

  OptimizationResult result;
  auto tally = [&](const Candidate& c) {
    ++result.candidates_evaluated;
    result.rollouts_evaluated += c.rollouts;
    result.physics_steps += c.rollouts * params.horizon;
  };

  Candidate best = evaluate(clamp_controls(initial, params.bounds), Rng(derive_seed(seed, {0, 0, stream::kMetrics})));
  tally(best);
  result.cost_history.push_back(best.objective);

  auto keep_going = [&] {
    if (!best.feasibility.feasible) return true;
    return robust_guard && params.require_robust && best.guard_metric > 1.0;
  };

  std::size_t iteration = 0;
  while (iteration < params.max_iterations && keep_going()) {
    std::vector<Candidate> batch(params.samples);
    const ControlSequence incumbent = best.controls;
    // Samples are evaluated in parallel; each owns seeded streams keyed by
    // (iteration, sample) so the outcome is independent of scheduling.
    for_each_index(params.samples, params.parallelism, [&](std::size_t s) {
      Rng perturb_rng = make_rng(seed, {iteration + 1, s, stream::kPerturbation});
      const ControlSequence delta = sample_control_perturbation(params.sampling_variance, params.horizon, perturb_rng);
      ControlSequence u = incumbent;
      for (std::size_t t = 0; t < u.size(); ++t)
        for (std::size_t d = 0; d < Control::kDim; ++d) u[t][d] += delta[t][d];
      batch[s] = evaluate(clamp_controls(u, params.bounds), make_rng(seed, {iteration + 1, s, stream::kMetrics}));
    });

    std::size_t arg = 0;
    for (std::size_t s = 0; s < batch.size(); ++s) {
      tally(batch[s]);
      if (batch[s].objective < batch[arg].objective) arg = s;
    }
    if (batch[arg].objective < best.objective) {
      best = std::move(batch[arg]);
      result.accepted_costs.push_back(best.objective);
    }
    ++iteration;
    result.cost_history.push_back(best.objective);
  }

  result.controls = std::move(best.controls);
  result.states = std::move(best.states);
  result.profile = std::move(best.profile);
  result.task_cost = best.task_cost;
  result.objective = best.objective;
  result.feasible = best.feasibility.feasible;
  result.feasibility_reason = best.feasibility.reason;
  result.robust = robust_guard && !(best.guard_metric > 1.0);
  result.iterations_used = iteration;
  return result;
}

}  // namespace

OptimizationResult robust_sto(const SystemState& x0, const ControlSequence& initial, const SceneDescription& scene,
                              const MetricsConfig& metrics, const ObjectiveWeights& weights,
                              const OptimizerParams& params, const PhysicsSettings& physics, std::uint64_t seed) {
  // Inner rollouts run serially when samples are already spread over lanes.
  const Parallelism inner = params.samples > 1 ? Parallelism{1} : params.parallelism;
  auto evaluate = [&](ControlSequence u, Rng rng) {
    Candidate c;
    c.controls = std::move(u);
    MetricsEvaluation m;
    try {
      m = compute_metrics(x0, c.controls, scene, metrics, physics, rng, inner);
    } catch (const DegenerateInputError&) {
      // A sample cloud that collapsed onto the nominal cannot be ranked.
      c.rollouts = (metrics.n_worlds + 1) * (metrics.n_samples + 1);
      c.states = rollout(PlanarWorld(scene, nominal_realization(scene), physics), x0, c.controls, physics.control_dt);
      c.task_cost = trajectory_cost(c.states, c.controls, scene, weights);
      c.feasibility = is_feasible(c.states, c.controls, scene, weights, params.bounds, std::nullopt, c.task_cost);
      c.guard_metric = std::numeric_limits<double>::infinity();
      return c;
    }
    c.states = std::move(m.nominal);
    c.profile = std::move(m.profile);
    c.rollouts = m.rollouts;
    c.task_cost = trajectory_cost(c.states, c.controls, scene, weights);
    c.feasibility = is_feasible(c.states, c.controls, scene, weights, params.bounds, std::nullopt, c.task_cost);
    const bool real = params.metric_source == MetricSource::real;
    const double e = real ? c.profile.path_expected_real : c.profile.path_expected_nominal;
    const double mx = real ? c.profile.path_maximal_real : c.profile.path_maximal_nominal;
    c.objective = robust_cost(c.task_cost, e, mx, weights);
    c.guard_metric = e;
    return c;
  };
  return optimize(initial, params, seed, true, evaluate);
}

OptimizationResult deterministic_sto(const SystemState& x0, const ControlSequence& initial,
                                     const SceneDescription& scene, const ObjectiveWeights& weights,
                                     const OptimizerParams& params, const PhysicsSettings& physics,
                                     const std::optional<SystemState>& desired, std::uint64_t seed,
                                     const Control& u_prev) {
  const PlanarWorld world(scene, nominal_realization(scene), physics);
  auto evaluate = [&](ControlSequence u, Rng) {
    Candidate c;
    c.controls = std::move(u);
    c.states = rollout(world, x0, c.controls, physics.control_dt);
    c.rollouts = 1;
    c.task_cost = trajectory_cost(c.states, c.controls, scene, weights, desired, u_prev);
    c.feasibility = is_feasible(c.states, c.controls, scene, weights, params.bounds, desired, c.task_cost);
    c.objective = c.task_cost;
    return c;
  };
  return optimize(initial, params, seed, false, evaluate);
}

}  // namespace contraplan
