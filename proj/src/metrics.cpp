#include "contraplan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "contraplan/rollout_batch.hpp"

namespace contraplan {

void DistanceWeights::validate() const {
  const double all[] = {robot_position, robot_angle, object_position, object_angle, linear_velocity, angular_velocity};
  bool any_positive = false;
  for (double w : all) {
    if (!(w >= 0.0)) throw ConfigError("distance weights must be non-negative");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw ConfigError("at least one distance weight must be positive");
}

double state_distance(const SystemState& a, const SystemState& b, const DistanceWeights& w) {
  auto sq = [](double v) { return v * v; };
  double sum = w.robot_position * (sq(a.robot.x - b.robot.x) + sq(a.robot.y - b.robot.y)) +
               w.robot_angle * sq(wrap_angle(a.robot.theta - b.robot.theta)) +
               w.linear_velocity * (sq(a.robot_velocity.vx - b.robot_velocity.vx) +
                                    sq(a.robot_velocity.vy - b.robot_velocity.vy)) +
               w.angular_velocity * sq(a.robot_velocity.omega - b.robot_velocity.omega);
  const std::size_t n = std::min(a.objects.size(), b.objects.size());
  for (std::size_t i = 0; i < n; ++i) {
    const ObjectState& oa = a.objects[i];
    const ObjectState& ob = b.objects[i];
    sum += w.object_position * (sq(oa.pose.x - ob.pose.x) + sq(oa.pose.y - ob.pose.y)) +
           w.object_angle * sq(wrap_angle(oa.pose.theta - ob.pose.theta)) +
           w.linear_velocity * (sq(oa.velocity.vx - ob.velocity.vx) + sq(oa.velocity.vy - ob.velocity.vy)) +
           w.angular_velocity * sq(oa.velocity.omega - ob.velocity.omega);
  }
  return std::sqrt(sum);
}

double expected_ratio(std::span<const double> initial, std::span<const double> final) {
  if (initial.empty() || initial.size() != final.size())
    throw std::invalid_argument("sample distance lists must be non-empty and equally long");
  // Plain left-to-right sums: the reduction order is part of the contract.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    den += initial[i];
    num += final[i];
  }
  if (!(den > 0.0)) throw DegenerateInputError("mean initial sample distance is zero");
  return num / den;
}

double maximal_ratio(std::span<const double> initial, std::span<const double> final) {
  if (initial.size() != final.size()) throw std::invalid_argument("sample distance lists differ in length");
  bool any = false;
  double best = 0.0;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (!(initial[i] > 0.0)) continue;
    const double r = final[i] / initial[i];
    if (!any || r > best) best = r;
    any = true;
  }
  if (!any) throw DegenerateInputError("every sample starts on the nominal trajectory");
  return best;
}

namespace {
std::vector<double> distances_to(std::span<const SystemState> samples, const SystemState& nominal,
                                 const DistanceWeights& w) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(state_distance(s, nominal, w));
  return out;
}
}  // namespace

double one_step_expected_metric(std::span<const SystemState> samples_t, std::span<const SystemState> samples_t1,
                                const SystemState& nominal_t, const SystemState& nominal_t1,
                                const DistanceWeights& w) {
  return expected_ratio(distances_to(samples_t, nominal_t, w), distances_to(samples_t1, nominal_t1, w));
}

double path_metric_expected(std::span<const SystemState> samples_0, std::span<const SystemState> samples_n,
                            const SystemState& nominal_0, const SystemState& nominal_n, const DistanceWeights& w) {
  return expected_ratio(distances_to(samples_0, nominal_0, w), distances_to(samples_n, nominal_n, w));
}

double path_metric_maximal(std::span<const SystemState> samples_0, std::span<const SystemState> samples_n,
                           const SystemState& nominal_0, const SystemState& nominal_n, const DistanceWeights& w) {
  return maximal_ratio(distances_to(samples_0, nominal_0, w), distances_to(samples_n, nominal_n, w));
}

DivergenceProfile combine_worlds(std::span<const WorldDivergence> worlds, std::size_t n_samples) {
  if (worlds.empty()) throw std::invalid_argument("combine_worlds needs the nominal world");
  DivergenceProfile p;
  p.n_samples = n_samples;
  p.n_worlds = worlds.size() - 1;
  p.path_expected_nominal = worlds[0].path_expected;
  p.path_maximal_nominal = worlds[0].path_maximal;
  p.path_expected_real = worlds[0].path_expected;
  p.path_maximal_real = worlds[0].path_maximal;
  p.worst_world = 0;
  for (std::size_t j = 0; j < worlds.size(); ++j) {
    p.world_expected.push_back(worlds[j].path_expected);
    p.world_maximal.push_back(worlds[j].path_maximal);
    // Strict comparisons: ties keep the lowest world index.
    if (worlds[j].path_expected > p.path_expected_real) {
      p.path_expected_real = worlds[j].path_expected;
      p.worst_world = j;
    }
    if (worlds[j].path_maximal > p.path_maximal_real) p.path_maximal_real = worlds[j].path_maximal;
  }
  p.per_step_expected = worlds[p.worst_world].per_step_expected;
  return p;
}

MetricsEvaluation compute_metrics(const SystemState& x0, const ControlSequence& controls,
                                  const SceneDescription& scene, const MetricsConfig& config,
                                  const PhysicsSettings& physics, Rng& rng, Parallelism par) {
  if (config.n_samples < 2) throw std::invalid_argument("compute_metrics needs at least two samples");
  if (config.n_worlds < 1) throw std::invalid_argument("compute_metrics needs at least one sampled world");

  const std::vector<SystemState> starts = sample_initial_states(x0, config.noise, config.n_samples, rng);

  std::vector<PlanarWorld> worlds;
  worlds.reserve(config.n_worlds + 1);
  worlds.emplace_back(scene, nominal_realization(scene), physics);
  for (std::size_t j = 1; j <= config.n_worlds; ++j)
    worlds.emplace_back(scene, sample_world_realization(scene, config.bounds, rng, static_cast<int>(j)), physics);

  // Task w * (C + 1) + c: c == 0 is the nominal start, c >= 1 the samples.
  const std::size_t per_world = config.n_samples + 1;
  std::vector<RolloutTask> tasks;
  tasks.reserve(worlds.size() * per_world);
  for (std::size_t w = 0; w < worlds.size(); ++w) {
    tasks.push_back({w, &x0});
    for (const SystemState& s : starts) tasks.push_back({w, &s});
  }
  std::vector<Trajectory> trajs = rollout_batch(worlds, tasks, controls, physics.control_dt, par);

  std::vector<WorldDivergence> per_world_metrics;
  per_world_metrics.reserve(worlds.size());
  auto dist = [&](const SystemState& a, const SystemState& b) { return state_distance(a, b, config.distance); };
  for (std::size_t w = 0; w < worlds.size(); ++w) {
    const std::size_t base = w * per_world;
    std::span<const Trajectory> samples(trajs.data() + base + 1, config.n_samples);
    per_world_metrics.push_back(evaluate_world(trajs[base], samples, dist));
  }

  MetricsEvaluation out;
  out.profile = combine_worlds(per_world_metrics, config.n_samples);
  out.nominal = std::move(trajs[0]);
  out.rollouts = tasks.size();
  return out;
}

double segment_metric(const DivergenceProfile& profile, std::size_t p, std::size_t q) {
  const std::size_t n = profile.per_step_expected.size();
  if (p >= q || q > n)
    throw IndexError("segment (" + std::to_string(p) + ", " + std::to_string(q) + ") is invalid for N = " +
                     std::to_string(n));
  double prod = 1.0;
  for (std::size_t t = p; t < q; ++t) prod *= profile.per_step_expected[t];
  return prod;
}

}  // namespace contraplan
