// contraplan command line: plan, execute, bench, render, scene gen.
#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "contraplan/bench.hpp"
#include "contraplan/config.hpp"
#include "contraplan/errors.hpp"
#include "contraplan/graph.hpp"
#include "contraplan/initial_guess.hpp"
#include "contraplan/io.hpp"
#include "contraplan/optimizer.hpp"
#include "contraplan/render.hpp"
#include "contraplan/scene_gen.hpp"

namespace cp = contraplan;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::string> scene;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> jobs;
};

void add_common(CLI::App* app, CommonOptions& o, bool with_scene, bool with_method) {
  app->add_option("--config", o.config, "run configuration JSON");
  app->add_option("--seed", o.seed, "base seed");
  app->add_option("--out", o.out, "output path");
  app->add_option("--jobs", o.jobs, "parallel lanes (CONTRAPLAN_JOBS overrides)");
  if (with_scene) app->add_option("--scene", o.scene, "scene JSON file");
  if (with_method)
    app->add_option("--method", o.method, "ol, rol, cp, cc or ocl")
        ->check(CLI::IsMember({"ol", "rol", "cp", "cc", "ocl"}, CLI::ignore_case));
}

cp::RunConfig resolve(const CommonOptions& o) {
  cp::RunConfig c = o.config.empty() ? cp::RunConfig{} : cp::load_run_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.scene) c.scene_path = *o.scene;
  if (o.method) c.method = cp::parse_method(*o.method);
  if (o.jobs) c.jobs = *o.jobs;
  if (o.out) c.out_dir = *o.out;
  c.jobs = cp::resolve_jobs(c.jobs);
  c.executor.optimizer.parallelism.jobs = c.jobs;
  c.validate();
  return c;
}

cp::SceneDescription single_scene(const cp::RunConfig& c) {
  if (c.scene_path) return cp::load_scene(*c.scene_path);
  cp::Rng rng = cp::make_rng(c.seed, {cp::stream::kScene, 0});
  return cp::generate_random_scene(c.generator, rng);
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (path)
    cp::write_text_file(*path, text);
  else
    std::cout << text;
}

int cmd_plan(const CommonOptions& o) {
  const cp::RunConfig c = resolve(o);
  const cp::SceneDescription scene = single_scene(c);
  const cp::ExecutorConfig& e = c.executor;
  const cp::SystemState x0 = scene.initial_state();
  const std::uint64_t seed = cp::derive_seed(c.seed, {cp::stream::kPlanner, 0});
  cp::ControlSequence init(e.optimizer.horizon, cp::Control{});
  if (e.initial_guess.enabled)
    init = cp::reach_initial_guess(x0, scene, e.weights, e.initial_guess, e.optimizer.bounds, e.optimizer.horizon,
                                   e.physics, cp::derive_seed(seed, {cp::stream::kPlanner}), e.optimizer.parallelism)
               .controls;
  const cp::OptimizationResult r =
      cp::robust_sto(x0, init, scene, e.metrics, e.weights, e.optimizer, e.physics, seed);
  cp::Json out{{"seed", c.seed},
               {"scene", scene},
               {"controls", r.controls},
               {"states", r.states},
               {"profile", r.profile},
               {"objective", r.objective},
               {"task_cost", r.task_cost},
               {"feasible", r.feasible},
               {"feasibility", std::string(cp::to_string(r.feasibility_reason))},
               {"robust", r.robust},
               {"iterations_used", r.iterations_used},
               {"cost_history", r.cost_history},
               {"rollouts_evaluated", r.rollouts_evaluated},
               {"config", cp::to_json(c)}};
  if (!r.profile.per_step_expected.empty()) {
    const cp::RobustnessGraph graph = cp::build_robustness_graph(r.profile, e.edge_costs);
    out["segments"] = cp::segment_plan_json(cp::min_cost_path(graph), graph);
  }
  emit(o.out, out.dump(2) + "\n");
  return 0;
}

int cmd_execute(const CommonOptions& o) {
  const cp::RunConfig c = resolve(o);
  cp::BenchMatrix m;
  m.scenes = {{"scene", single_scene(c)}};
  m.executor = c.executor;
  m.observation = c.observation;
  const cp::ExecutionLog log = cp::run_cell(m, 0, c.method, c.seed);
  if (o.out)
    cp::save_log(log, *o.out);
  else
    cp::write_log(log, std::cout);
  std::fprintf(stderr, "%s seed %llu: %s, %zu steps, %.1f%% open loop, %zu optimizer calls%s%s\n",
               std::string(cp::to_string(log.method)).c_str(), static_cast<unsigned long long>(c.seed),
               log.success ? "success" : "failure", log.steps.size(), log.percent_open_loop,
               log.optimizer_invocations, log.failure.empty() ? "" : ", ", log.failure.c_str());
  return 0;
}

int cmd_bench(const CommonOptions& o, const std::vector<std::string>& scenes, const std::string& format) {
  cp::RunConfig c = resolve(o);
  if (!scenes.empty()) c.scene_paths = scenes;
  const cp::ReportFormat f = cp::parse_report_format(format);
  const cp::BenchMatrix m = cp::bench_matrix(c);
  const cp::BenchReport report = cp::run_benchmark(m);
  const std::filesystem::path dir = c.out_dir;
  const auto path = cp::emit_report(report, f, dir);
  cp::write_timing_csv(report, dir / "wall_clock.csv");
  cp::write_text_file(dir / "config.json", cp::to_json(c).dump(2) + "\n");
  for (const cp::MethodAggregate& a : report.aggregates())
    std::fprintf(stderr, "%-4s runs %zu  success %.3f  plan %.3fs  exec %.3fs  open-loop %.1f%%\n",
                 std::string(cp::to_string(a.method)).c_str(), a.runs, a.success.mean, a.planning_time_s.mean,
                 a.execution_time_s.mean, a.percent_open_loop.mean);
  std::fprintf(stderr, "wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_render(const std::string& log_path, const std::string& scene_path, const std::string& out) {
  const cp::ExecutionLog log = cp::load_log(log_path);
  const cp::SceneDescription scene = cp::load_scene(scene_path);
  const auto files = cp::render_trace(log, scene, out);
  std::fprintf(stderr, "wrote %zu SVG files to %s\n", files.size(), out.c_str());
  return 0;
}

int cmd_scene_gen(const CommonOptions& o, std::optional<std::size_t> objects) {
  cp::RunConfig c = resolve(o);
  if (objects) c.generator.object_count = *objects;
  cp::Rng rng = cp::make_rng(c.seed, {cp::stream::kScene, 0});
  const cp::SceneDescription scene = cp::generate_random_scene(c.generator, rng);
  emit(o.out, cp::Json{{"scene", scene}}.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open and closed-loop planar manipulation planner"};
  app.require_subcommand(1);

  CommonOptions plan_o, exec_o, bench_o, gen_o;
  CLI::App* plan = app.add_subcommand("plan", "robust plan, segmentation and divergence profile for one scene");
  add_common(plan, plan_o, true, false);

  CLI::App* exec = app.add_subcommand("execute", "plan and run one method on the simulated real world");
  add_common(exec, exec_o, true, true);

  CLI::App* bench = app.add_subcommand("bench", "scenes x methods x seeds benchmark");
  add_common(bench, bench_o, false, false);
  std::vector<std::string> bench_scenes;
  std::string format = "csv";
  bench->add_option("--scene", bench_scenes, "scene files (repeatable); generated scenes otherwise");
  bench->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* render = app.add_subcommand("render", "execution log to SVG frames");
  std::string log_path, render_scene, render_out = "frames";
  render->add_option("--log", log_path, "execution log (JSON lines)")->required();
  render->add_option("--scene", render_scene, "scene JSON file")->required();
  render->add_option("--out", render_out, "output directory");

  CLI::App* scene = app.add_subcommand("scene", "scene utilities");
  scene->require_subcommand(1);
  CLI::App* gen = scene->add_subcommand("gen", "generate a random shelf scene");
  add_common(gen, gen_o, false, false);
  std::optional<std::size_t> objects;
  gen->add_option("--objects", objects, "object count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*plan) return cmd_plan(plan_o);
    if (*exec) return cmd_execute(exec_o);
    if (*bench) return cmd_bench(bench_o, bench_scenes, format);
    if (*render) return cmd_render(log_path, render_scene, render_out);
    if (*gen) return cmd_scene_gen(gen_o, objects);
  } catch (const cp::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const cp::GenerationError& e) {
    std::fprintf(stderr, "generation error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
