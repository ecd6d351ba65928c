// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "contraplan/metrics.hpp"
#include "contraplan/optimizer.hpp"
#include "contraplan/rollout_batch.hpp"
#include "contraplan/scene_gen.hpp"

namespace contraplan {
namespace {

SceneDescription bench_scene(std::size_t objects) {
  GeneratorParams p;
  p.object_count = objects;
  Rng rng(17);
  return generate_random_scene(p, rng);
}

ControlSequence push_controls() { return ControlSequence(5, Control{0.3, 0.02, 0.0}); }

struct Batch {
  SceneDescription scene;
  SystemState start;
  std::vector<PlanarWorld> worlds;
  std::vector<RolloutTask> tasks;

  Batch(std::size_t objects, std::size_t n_worlds, std::size_t per_world)
      : scene(bench_scene(objects)), start(scene.initial_state()) {
    Rng rng(3);
    worlds.emplace_back(scene, nominal_realization(scene));
    for (std::size_t j = 1; j <= n_worlds; ++j)
      worlds.emplace_back(scene, sample_world_realization(scene, ParameterBounds{}, rng, static_cast<int>(j)));
    for (std::size_t w = 0; w < worlds.size(); ++w)
      for (std::size_t c = 0; c < per_world; ++c) tasks.push_back({w, &start});
  }
};

void BM_RolloutBatchSerial(benchmark::State& state) {
  const Batch b(static_cast<std::size_t>(state.range(0)), 4, 5);
  const ControlSequence u = push_controls();
  for (auto _ : state) benchmark::DoNotOptimize(rollout_batch_serial(b.worlds, b.tasks, u, 0.2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.tasks.size()));
}

void BM_RolloutBatchParallel(benchmark::State& state) {
  const Batch b(static_cast<std::size_t>(state.range(0)), 4, 5);
  const ControlSequence u = push_controls();
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(rollout_batch_parallel(b.worlds, b.tasks, u, 0.2, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.tasks.size()));
}

void BM_RobustSto(benchmark::State& state) {
  const SceneDescription scene = bench_scene(5);
  OptimizerParams params;
  params.parallelism.jobs = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(robust_sto(scene.initial_state(), push_controls(), scene, MetricsConfig{},
                                        ObjectiveWeights{}, params, {}, 11));
}

BENCHMARK(BM_RolloutBatchSerial)->Arg(3)->Arg(10)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_RolloutBatchParallel)->ArgsProduct({{3, 10}, {2, 4, 8}})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_RobustSto)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace contraplan

BENCHMARK_MAIN();
