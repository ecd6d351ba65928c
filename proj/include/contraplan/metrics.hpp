#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "contraplan/errors.hpp"
#include "contraplan/parallel.hpp"
#include "contraplan/physics.hpp"
#include "contraplan/random.hpp"
#include "contraplan/scene.hpp"

namespace contraplan {

/// Per-component weights of the state norm. Angles are compared wrapped.
struct DistanceWeights {
  double robot_position = 1.0;
  double robot_angle = 1.0;
  double object_position = 1.0;
  double object_angle = 1.0;
  double linear_velocity = 0.1;
  double angular_velocity = 0.1;

  void validate() const;
  bool operator==(const DistanceWeights&) const = default;
};

/// sqrt(sum_k w_k * d_k^2) over all state components.
double state_distance(const SystemState& a, const SystemState& b, const DistanceWeights& w = {});

/// Divergence of a sample cloud around a nominal trajectory. A value below
/// one means the cloud shrank (convergent), above one that it spread.
struct DivergenceProfile {
  /// Entry t covers the step t -> t+1, taken from the worst world.
  std::vector<double> per_step_expected;
  double path_expected_nominal = 0.0;
  double path_maximal_nominal = 0.0;
  double path_expected_real = 0.0;
  double path_maximal_real = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_worlds = 0;
  /// Per-world path metrics, index 0 is the nominal model.
  std::vector<double> world_expected;
  std::vector<double> world_maximal;
  /// World that attained path_expected_real.
  std::size_t worst_world = 0;

  bool operator==(const DivergenceProfile&) const = default;
};

/// mean(final) / mean(initial). Throws DegenerateInputError when the initial
/// mean is zero.
double expected_ratio(std::span<const double> initial, std::span<const double> final);

/// max_i final_i / initial_i over samples with non-zero initial distance.
double maximal_ratio(std::span<const double> initial, std::span<const double> final);

double one_step_expected_metric(std::span<const SystemState> samples_t, std::span<const SystemState> samples_t1,
                                const SystemState& nominal_t, const SystemState& nominal_t1,
                                const DistanceWeights& w = {});
double path_metric_expected(std::span<const SystemState> samples_0, std::span<const SystemState> samples_n,
                            const SystemState& nominal_0, const SystemState& nominal_n,
                            const DistanceWeights& w = {});
double path_metric_maximal(std::span<const SystemState> samples_0, std::span<const SystemState> samples_n,
                           const SystemState& nominal_0, const SystemState& nominal_n,
                           const DistanceWeights& w = {});

/// Metrics of one world from its nominal and sample trajectories.
struct WorldDivergence {
  std::vector<double> per_step_expected;
  double path_expected = 0.0;
  double path_maximal = 0.0;
};

template <class State, class Distance>
WorldDivergence evaluate_world(const std::vector<State>& nominal, std::span<const std::vector<State>> samples,
                               Distance&& distance) {
  if (samples.empty()) throw DegenerateInputError("no sample trajectories");
  const std::size_t steps = nominal.size() - 1;
  // d[t][i]: distance of sample i from the nominal at time t.
  std::vector<std::vector<double>> d(nominal.size(), std::vector<double>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != nominal.size()) throw std::invalid_argument("trajectory length mismatch");
    for (std::size_t t = 0; t < nominal.size(); ++t) d[t][i] = distance(samples[i][t], nominal[t]);
  }
  WorldDivergence out;
  out.per_step_expected.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) out.per_step_expected.push_back(expected_ratio(d[t], d[t + 1]));
  out.path_expected = expected_ratio(d.front(), d.back());
  out.path_maximal = maximal_ratio(d.front(), d.back());
  return out;
}

/// Worst-case combination over worlds; worlds[0] must be the nominal model,
/// and the nominal world takes part in the max.
DivergenceProfile combine_worlds(std::span<const WorldDivergence> worlds, std::size_t n_samples);

struct MetricsConfig {
  std::size_t n_samples = 4;
  std::size_t n_worlds = 4;
  ParameterBounds bounds;
  NoiseSpec noise;
  DistanceWeights distance;

  bool operator==(const MetricsConfig&) const = default;
};

struct MetricsEvaluation {
  DivergenceProfile profile;
  /// Nominal-world rollout from x0 (the candidate's state sequence).
  Trajectory nominal;
  std::size_t rollouts = 0;
};

/// Draws the initial-state samples once, rolls out the nominal state and all
/// samples in the nominal world and in n_worlds sampled realizations, then
/// reduces in a fixed order.
MetricsEvaluation compute_metrics(const SystemState& x0, const ControlSequence& controls,
                                  const SceneDescription& scene, const MetricsConfig& config,
                                  const PhysicsSettings& physics, Rng& rng, Parallelism par = {});

/// Product of per_step_expected[t] for t in [p, q). Throws IndexError unless
/// p < q <= N.
double segment_metric(const DivergenceProfile& profile, std::size_t p, std::size_t q);

}  // namespace contraplan
