#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "contraplan/errors.hpp"
#include "contraplan/metrics.hpp"
#include "support.hpp"

namespace contraplan {
namespace {

using test::Gen;

SystemState one_object_state(Pose2 pose) {
  SystemState s;
  ObjectState o;
  o.pose = pose;
  s.objects.push_back(o);
  return s;
}

TEST(StateDistance, IdenticalStates) {
  Gen gen(31);
  const SceneDescription scene = gen.scene();
  const SystemState s = scene.initial_state();
  EXPECT_EQ(state_distance(s, s), 0.0);
}

TEST(StateDistance, ThreeFourFive) {
  const SystemState a = one_object_state({0.0, 0.0, 0.0});
  const SystemState b = one_object_state({0.3, 0.4, 0.0});
  EXPECT_NEAR(state_distance(a, b), 0.5, 1e-15);
}

TEST(StateDistance, AnglesWrap) {
  const SystemState a = one_object_state({0.0, 0.0, std::numbers::pi - 0.01});
  const SystemState b = one_object_state({0.0, 0.0, -std::numbers::pi + 0.01});
  EXPECT_NEAR(state_distance(a, b), 0.02, 1e-12);
}

TEST(StateDistance, DefaultWeights) {
  const DistanceWeights w;
  EXPECT_EQ(w.robot_position, 1.0);
  EXPECT_EQ(w.object_angle, 1.0);
  EXPECT_EQ(w.linear_velocity, 0.1);
  EXPECT_EQ(w.angular_velocity, 0.1);
  DistanceWeights zero{0, 0, 0, 0, 0, 0};
  EXPECT_THROW(zero.validate(), ConfigError);
}

// Sample states whose only difference from the nominal is object 0's x.
std::vector<SystemState> offsets(const std::vector<double>& d) {
  std::vector<SystemState> out;
  for (double v : d) out.push_back(one_object_state({v, 0.0, 0.0}));
  return out;
}

TEST(OneStepMetric, Examples) {
  const SystemState nominal = one_object_state({0.0, 0.0, 0.0});
  EXPECT_NEAR(one_step_expected_metric(offsets({1, 1, 1, 1}), offsets({0.5, 0.5, 0.5, 0.5}), nominal, nominal), 0.5,
              1e-15);
  EXPECT_NEAR(one_step_expected_metric(offsets({0.2, 0.1}), offsets({0.2, 0.1}), nominal, nominal), 1.0, 1e-15);
  EXPECT_NEAR(
      one_step_expected_metric(offsets({0.1, 0.2, 0.3, 0.6}), offsets({0.3, 0.5, 0.7, 0.9}), nominal, nominal), 2.0,
      1e-12);
}

TEST(OneStepMetric, ZeroInitialDistanceIsDegenerate) {
  const SystemState nominal = one_object_state({0.0, 0.0, 0.0});
  EXPECT_THROW(one_step_expected_metric(offsets({0, 0}), offsets({1, 1}), nominal, nominal), DegenerateInputError);
}

TEST(PathMetric, Examples) {
  const SystemState nominal = one_object_state({0.0, 0.0, 0.0});
  EXPECT_NEAR(path_metric_expected(offsets({0.02, 0.02}), offsets({0.01, 0.01}), nominal, nominal), 0.5, 1e-15);
  EXPECT_NEAR(path_metric_expected(offsets({0.01, 0.03}), offsets({0.02, 0.02}), nominal, nominal), 1.0, 1e-15);
  EXPECT_NEAR(path_metric_maximal(offsets({0.2, 0.2}), offsets({0.1, 0.3}), nominal, nominal), 1.5, 1e-15);
  EXPECT_NEAR(path_metric_maximal(offsets({0.1, 0.2, 0.4}), offsets({0.07, 0.14, 0.28}), nominal, nominal), 0.7,
              1e-15);
}

TEST(PathMetric, MaximalSkipsZeroSamplesAndRejectsAllZero) {
  const SystemState nominal = one_object_state({0.0, 0.0, 0.0});
  EXPECT_NEAR(path_metric_maximal(offsets({0.0, 0.1}), offsets({5.0, 0.2}), nominal, nominal), 2.0, 1e-15);
  EXPECT_THROW(path_metric_maximal(offsets({0.0, 0.0}), offsets({1.0, 1.0}), nominal, nominal),
               DegenerateInputError);
}

TEST(MetricProperty, MaximalDominatesExpectedForEqualStarts) {
  Gen gen(32);
  const SystemState nominal = one_object_state({0.0, 0.0, 0.0});
  for (int k = 0; k < 200; ++k) {
    const double d0 = gen.uniform(0.001, 0.1);
    std::vector<double> start(4, d0);
    std::vector<double> end;
    for (int i = 0; i < 4; ++i) end.push_back(gen.uniform(0.0, 0.2));
    EXPECT_GE(path_metric_maximal(offsets(start), offsets(end), nominal, nominal),
              path_metric_expected(offsets(start), offsets(end), nominal, nominal) * (1 - 1e-15));
  }
}

// Scalar linear map x_{t+1} = a x_t through the generic world evaluator.
WorldDivergence linear_map(double a, const std::vector<double>& starts, double nominal0, std::size_t n) {
  auto traj = [&](double x0) {
    std::vector<double> x{x0};
    for (std::size_t t = 0; t < n; ++t) x.push_back(a * x.back());
    return x;
  };
  const std::vector<double> nominal = traj(nominal0);
  std::vector<std::vector<double>> samples;
  for (double s : starts) samples.push_back(traj(s));
  return evaluate_world(nominal, std::span<const std::vector<double>>(samples),
                        [](double p, double q) { return std::abs(p - q); });
}

TEST(LinearMap, ContractingStepMatchesClosedForm) {
  const WorldDivergence w = linear_map(0.9, {0.3, -0.2, 0.05, 0.11}, 0.0, 5);
  ASSERT_EQ(w.per_step_expected.size(), 5u);
  for (double e : w.per_step_expected) EXPECT_NEAR(e, 0.9, 1e-12);
  EXPECT_NEAR(w.path_expected, 0.59049, 1e-12);
  EXPECT_NEAR(w.path_maximal, 0.59049, 1e-12);
}

TEST(LinearMapProperty, ExactForAnySamples) {
  Gen gen(33);
  for (int k = 0; k < 200; ++k) {
    const double a = gen.uniform(0.2, 1.8);
    const double nominal0 = gen.uniform(-1, 1);
    std::vector<double> starts;
    const std::size_t n = 2 + gen.index(6);
    for (std::size_t i = 0; i < n; ++i) starts.push_back(nominal0 + gen.uniform(0.01, 0.5) * (gen.index(2) ? 1 : -1));
    const WorldDivergence w = linear_map(a, starts, nominal0, 5);
    for (double e : w.per_step_expected) EXPECT_NEAR(e, a, 1e-12);
    EXPECT_NEAR(w.path_maximal, std::pow(a, 5), 1e-12);
  }
}

TEST(LinearMapProperty, ScaleInvariance) {
  Gen gen(34);
  for (int k = 0; k < 100; ++k) {
    const double a = gen.uniform(0.3, 1.5);
    const double c = gen.uniform(0.01, 100.0);
    std::vector<double> starts;
    std::vector<double> scaled;
    for (int i = 0; i < 4; ++i) {
      starts.push_back(gen.uniform(-0.1, 0.1));
      scaled.push_back(c * starts.back());
    }
    const WorldDivergence u = linear_map(a, starts, 0.0, 5);
    const WorldDivergence v = linear_map(a, scaled, 0.0, 5);
    EXPECT_NEAR(u.path_expected, v.path_expected, 1e-12);
    EXPECT_NEAR(u.path_maximal, v.path_maximal, 1e-12);
    for (std::size_t t = 0; t < 5; ++t) EXPECT_NEAR(u.per_step_expected[t], v.per_step_expected[t], 1e-12);
  }
}

TEST(CombineWorlds, RealIsMaxOverWorlds) {
  std::vector<WorldDivergence> worlds;
  for (double e : {0.6, 0.9, 1.2, 0.7}) worlds.push_back({{e}, e, e + 0.1});
  const DivergenceProfile p = combine_worlds(worlds, 4);
  EXPECT_EQ(p.path_expected_real, 1.2);
  EXPECT_EQ(p.path_expected_nominal, 0.6);
  EXPECT_EQ(p.worst_world, 2u);
  EXPECT_EQ(p.per_step_expected, std::vector<double>{1.2});
  EXPECT_DOUBLE_EQ(p.path_maximal_real, 1.3);
  EXPECT_EQ(p.n_worlds, 3u);
}

TEST(SegmentMetric, Examples) {
  DivergenceProfile p;
  p.per_step_expected = {0.5, 2.0, 0.8};
  EXPECT_DOUBLE_EQ(segment_metric(p, 0, 3), 0.8);
  EXPECT_DOUBLE_EQ(segment_metric(p, 1, 2), 2.0);
  EXPECT_EQ(segment_metric(p, 0, 2), 1.0);
  EXPECT_FALSE(segment_metric(p, 0, 2) < 1.0);
  EXPECT_THROW(segment_metric(p, 2, 2), IndexError);
  EXPECT_THROW(segment_metric(p, 2, 1), IndexError);
  EXPECT_THROW(segment_metric(p, 0, 4), IndexError);
}

MetricsConfig table_metrics() {
  MetricsConfig m;
  m.bounds.mass = {0.5, 0.8};
  m.bounds.friction = {0.2, 0.4};
  return m;
}

// Drives the gripper into the clutter so that samples interact.
ControlSequence into_clutter(Gen& gen) {
  ControlSequence u = gen.controls(5, 0.3);
  for (Control& c : u) c.vx = gen.uniform(0.2, 0.5);
  return u;
}

TEST(ComputeMetrics, InvariantsOnGeneratedScenes) {
  Gen gen(35);
  for (int k = 0; k < 15; ++k) {
    const SceneDescription scene = gen.scene();
    const ControlSequence u = into_clutter(gen);
    Rng rng(gen.seed());
    const MetricsEvaluation m = compute_metrics(scene.initial_state(), u, scene, table_metrics(), {}, rng);
    const DivergenceProfile& p = m.profile;
    ASSERT_EQ(p.per_step_expected.size(), 5u);
    for (double e : p.per_step_expected) {
      EXPECT_TRUE(std::isfinite(e));
      EXPECT_GT(e, 0.0);
    }
    EXPECT_GE(p.path_expected_real, p.path_expected_nominal);
    EXPECT_GE(p.path_maximal_real, p.path_maximal_nominal);
    double prod = 1.0;
    for (double e : p.per_step_expected) prod *= e;
    EXPECT_NEAR(prod / p.world_expected[p.worst_world], 1.0, 1e-9);
    EXPECT_EQ(p.world_expected[p.worst_world], p.path_expected_real);
    EXPECT_EQ(m.rollouts, (4u + 1) * (4u + 1));
    EXPECT_EQ(m.nominal.size(), 6u);
  }
}

TEST(ComputeMetrics, DegenerateBoundsGiveNominal) {
  Gen gen(36);
  for (int k = 0; k < 10; ++k) {
    const SceneDescription scene = gen.scene();
    MetricsConfig m;
    m.bounds.mass = {scene.objects[0].nominal_mass, scene.objects[0].nominal_mass};
    m.bounds.friction = {scene.objects[0].nominal_friction, scene.objects[0].nominal_friction};
    m.bounds.size_scale = {1.0, 1.0};
    Rng rng(gen.seed());
    const DivergenceProfile p = compute_metrics(scene.initial_state(), into_clutter(gen), scene, m, {}, rng).profile;
    EXPECT_EQ(p.path_expected_real, p.path_expected_nominal);
    EXPECT_EQ(p.path_maximal_real, p.path_maximal_nominal);
  }
}

TEST(ComputeMetrics, SameSeedSameProfile) {
  Gen gen(37);
  const SceneDescription scene = gen.scene();
  const ControlSequence u = into_clutter(gen);
  Rng a(5);
  Rng b(5);
  EXPECT_EQ(compute_metrics(scene.initial_state(), u, scene, table_metrics(), {}, a).profile,
            compute_metrics(scene.initial_state(), u, scene, table_metrics(), {}, b).profile);
}

TEST(ComputeMetrics, ParallelMatchesSerial) {
  Gen gen(38);
  for (int k = 0; k < 5; ++k) {
    const SceneDescription scene = gen.scene();
    const ControlSequence u = into_clutter(gen);
    const std::uint64_t seed = gen.seed();
    Rng a(seed);
    Rng b(seed);
    const MetricsEvaluation s = compute_metrics(scene.initial_state(), u, scene, table_metrics(), {}, a, {1});
    const MetricsEvaluation p = compute_metrics(scene.initial_state(), u, scene, table_metrics(), {}, b, {4});
    EXPECT_EQ(s.profile, p.profile);
    EXPECT_EQ(s.nominal, p.nominal);
  }
}

TEST(ComputeMetrics, RejectsTooFewSamples) {
  const SceneDescription scene = test::open_scene();
  MetricsConfig m;
  m.n_samples = 1;
  Rng rng(1);
  EXPECT_THROW(compute_metrics(scene.initial_state(), ControlSequence(2), scene, m, {}, rng), std::invalid_argument);
}

TEST(SegmentMetricProperty, Multiplicative) {
  Gen gen(39);
  for (int k = 0; k < 100; ++k) {
    DivergenceProfile p;
    const std::size_t n = 1 + gen.index(10);
    for (std::size_t t = 0; t < n; ++t) p.per_step_expected.push_back(gen.uniform(0.25, 4.0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c <= n; ++c)
          EXPECT_NEAR(segment_metric(p, a, b) * segment_metric(p, b, c) / segment_metric(p, a, c), 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace contraplan
