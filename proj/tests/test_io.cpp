#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "contraplan/config.hpp"
#include "contraplan/errors.hpp"
#include "contraplan/executor.hpp"
#include "contraplan/io.hpp"
#include "contraplan/render.hpp"
#include "contraplan/scene_gen.hpp"
#include "support.hpp"

namespace contraplan {
namespace {

using test::Gen;

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("contraplan_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

SceneDescription generated(std::uint64_t seed, std::size_t objects) {
  GeneratorParams p;
  p.object_count = objects;
  Rng rng(seed);
  return generate_random_scene(p, rng);
}

TEST(Generator, DeterministicAndOverlapFree) {
  const SceneDescription a = generated(4, 3);
  const SceneDescription b = generated(4, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.objects.size(), 3u);
  EXPECT_FALSE(has_overlap(a));
}

TEST(Generator, TargetIsBlocked) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const SceneDescription s = generated(seed, 3 + seed % 8);
    const Vec2 from = grasp_point(s, s.robot_start);
    const Vec2 to = s.objects[s.target_object].nominal_pose.position();
    const std::vector<std::size_t> blockers = ray_blockers(s, from, to);
    EXPECT_GE(blockers.size(), 2u) << "seed " << seed;
    for (std::size_t i : blockers) EXPECT_NE(i, s.target_object);
    EXPECT_FALSE(has_overlap(s)) << "seed " << seed;
  }
}

TEST(Generator, TwentySeedsTwentyScenes) {
  std::vector<SceneDescription> scenes;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) scenes.push_back(generated(seed, 5));
  for (std::size_t i = 0; i < scenes.size(); ++i)
    for (std::size_t j = i + 1; j < scenes.size(); ++j) EXPECT_NE(scenes[i], scenes[j]);
}

TEST(Generator, Errors) {
  GeneratorParams p;
  p.object_count = 2;
  Rng rng(1);
  EXPECT_THROW(generate_random_scene(p, rng), ConfigError);
  p.object_count = 10;
  p.clutter_region = {{0.15, -0.02}, {0.2, 0.02}};
  p.max_attempts = 20;
  EXPECT_THROW(generate_random_scene(p, rng), GenerationError);
}

TEST(SceneIo, RoundTrip) {
  const auto dir = scratch_dir("scene");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SceneDescription s = generated(seed, 6);
    save_scene(s, dir / "scene.json");
    EXPECT_EQ(load_scene(dir / "scene.json"), s);
  }
}

TEST(SceneIo, MissingFileNamesThePath) {
  try {
    load_scene("/nonexistent/scene.json");
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/scene.json"), std::string::npos);
  }
}

ExecutionLog small_run(const SceneDescription& scene, Method m) {
  ExecutorConfig c;
  c.optimizer.samples = 2;
  c.optimizer.max_iterations = 2;
  c.metrics.n_samples = 2;
  c.metrics.n_worlds = 2;
  c.initial_guess.candidates = 8;
  RealWorldHarness h = RealWorldHarness::sample(scene, c.metrics.bounds, {}, {}, 5);
  return run_baseline(m, scene, c, h, 5);
}

TEST(LogIo, RoundTrip) {
  const SceneDescription scene = generated(2, 4);
  for (Method m : {Method::ol, Method::cc, Method::ocl}) {
    const ExecutionLog log = small_run(scene, m);
    std::stringstream buf;
    write_log(log, buf);
    const ExecutionLog back = read_log(buf);
    EXPECT_EQ(back.method, log.method);
    EXPECT_EQ(back.seed, log.seed);
    EXPECT_EQ(back.success, log.success);
    EXPECT_EQ(back.optimizer_invocations, log.optimizer_invocations);
    EXPECT_EQ(back.percent_open_loop, log.percent_open_loop);
    EXPECT_EQ(back.initial_true, log.initial_true);
    EXPECT_EQ(back.planned_controls, log.planned_controls);
    EXPECT_EQ(back.segments.has_value(), log.segments.has_value());
    ASSERT_EQ(back.steps.size(), log.steps.size());
    for (std::size_t t = 0; t < log.steps.size(); ++t) {
      EXPECT_EQ(back.steps[t].mode, log.steps[t].mode);
      EXPECT_EQ(back.steps[t].control, log.steps[t].control);
      EXPECT_EQ(back.steps[t].true_state, log.steps[t].true_state);
      EXPECT_EQ(back.steps[t].observed, log.steps[t].observed);
    }
  }
}

TEST(Render, ZeroStepLogGivesOneFrame) {
  const SceneDescription scene = generated(3, 3);
  ExecutionLog log;
  log.initial_true = scene.initial_state();
  const auto dir = scratch_dir("render0");
  const auto files = render_trace(log, scene, dir);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "frame_000.svg");
  EXPECT_EQ(files[1].filename(), "summary.svg");
  for (const auto& f : files) EXPECT_TRUE(std::filesystem::exists(f));
}

TEST(Render, FramePerStepAndModeColors) {
  const SceneDescription scene = generated(3, 4);
  const ExecutionLog log = small_run(scene, Method::ocl);
  const auto files = render_trace(log, scene, scratch_dir("render"));
  EXPECT_EQ(files.size(), log.steps.size() + 2);
  SvgTransform t;
  t.world = scene.boundary;
  for (std::size_t k = 1; k <= log.steps.size(); ++k) {
    const std::string svg = render_frame(log, scene, k, t);
    const std::string mode(to_string(log.steps[k - 1].mode));
    EXPECT_NE(svg.find("data-mode=\"" + mode + "\""), std::string::npos);
  }
}

TEST(Render, DrawnPositionsInvertToLoggedPoses) {
  const SceneDescription scene = generated(6, 5);
  const ExecutionLog log = small_run(scene, Method::cc);
  SvgTransform t;
  t.world = scene.boundary;
  const std::regex marker(R"re(<circle class="object" data-object="(\d+)" data-toppled="\d" cx="([^"]+)" cy="([^"]+)")re");
  for (std::size_t k = 0; k <= log.steps.size(); ++k) {
    const SystemState& state = k == 0 ? log.initial_true : log.steps[k - 1].true_state;
    const std::string svg = render_frame(log, scene, k, t);
    std::set<std::size_t> seen;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), marker); it != std::sregex_iterator(); ++it) {
      const std::size_t i = std::stoul((*it)[1]);
      const Vec2 w = t.to_world({std::stod((*it)[2]), std::stod((*it)[3])});
      EXPECT_NEAR(w.x, state.objects[i].pose.x, 1e-12);
      EXPECT_NEAR(w.y, state.objects[i].pose.y, 1e-12);
      seen.insert(i);
    }
    EXPECT_EQ(seen.size(), state.objects.size());
  }
}

TEST(RenderProperty, TransformRoundTrip) {
  Gen gen(91);
  SvgTransform t;
  t.world = {{-0.3, -0.7}, {0.9, 0.4}};
  for (int k = 0; k < 500; ++k) {
    const Vec2 p{gen.uniform(-1, 1), gen.uniform(-1, 1)};
    const Vec2 q = t.to_world(t.to_pixel(p));
    EXPECT_NEAR(q.x, p.x, 1e-12);
    EXPECT_NEAR(q.y, p.y, 1e-12);
  }
  const Vec2 corner = t.to_pixel({-0.3, 0.4});
  EXPECT_EQ(corner.x, t.margin);
  EXPECT_EQ(corner.y, t.margin);
}

TEST(Config, DefaultsRoundTrip) {
  const RunConfig c;
  EXPECT_EQ(run_config_from_json(to_json(c)), c);
}

TEST(Config, OverridesRoundTrip) {
  RunConfig c;
  c.seed = 42;
  c.seeds = {1, 2, 3};
  c.methods = {Method::cc, Method::ocl};
  c.executor.optimizer.samples = 7;
  c.executor.optimizer.sampling_variance = {0.1, 0.2, 0.3};
  c.executor.metrics.bounds.mass = {0.4, 0.9};
  c.executor.weights.terminal = 10.0;
  c.executor.metrics.distance.linear_velocity = 0.5;
  c.executor.weights.distance.object_position = 0.7;
  c.generator.object_count = 7;
  c.observation.sigma_position = 0.0;
  const RunConfig back = run_config_from_json(to_json(c));
  EXPECT_EQ(back, c);
}

TEST(Config, PartialFileKeepsDefaults) {
  const RunConfig c = run_config_from_json(Json::parse(R"({"seed": 9, "optimizer": {"samples": 6}})"));
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.executor.optimizer.samples, 6u);
  EXPECT_EQ(c.executor.optimizer.horizon, 5u);
  EXPECT_EQ(c.executor.edge_costs, EdgeCosts{});
}

TEST(Config, Errors) {
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"sede": 1})")), ConfigError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"optimizer": {"sample": 4}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"optimizer": {"samples": "four"}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"method": "mpc"})")), ConfigError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"metrics": {"mass": [0.9, 0.5]}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"robustness_graph": {"c_ro": 2000}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"cost": {"beta": 0}})")), ConfigError);
  EXPECT_THROW(load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, JobsEnvironmentOverride) {
  ::setenv("CONTRAPLAN_JOBS", "3", 1);
  EXPECT_EQ(resolve_jobs(1), 3);
  ::unsetenv("CONTRAPLAN_JOBS");
  EXPECT_EQ(resolve_jobs(2), 2);
}

}  // namespace
}  // namespace contraplan
