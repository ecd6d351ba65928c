#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "contraplan/parallel.hpp"
#include "contraplan/physics.hpp"

namespace contraplan {

/// One independent rollout: a start state simulated in worlds[world].
struct RolloutTask {
  std::size_t world = 0;
  const SystemState* start = nullptr;
};

/// Reference implementation: tasks in index order on the calling thread.
std::vector<Trajectory> rollout_batch_serial(std::span<const PlanarWorld> worlds, std::span<const RolloutTask> tasks,
                                             const ControlSequence& controls, double dt);

/// OpenMP implementation. Output slot k always holds task k, so the result is
/// bit-identical to the serial kernel for any lane count.
std::vector<Trajectory> rollout_batch_parallel(std::span<const PlanarWorld> worlds,
                                               std::span<const RolloutTask> tasks, const ControlSequence& controls,
                                               double dt, int jobs);

inline std::vector<Trajectory> rollout_batch(std::span<const PlanarWorld> worlds, std::span<const RolloutTask> tasks,
                                             const ControlSequence& controls, double dt, Parallelism par) {
  if (par.jobs <= 1) return rollout_batch_serial(worlds, tasks, controls, dt);
  return rollout_batch_parallel(worlds, tasks, controls, dt, par.jobs);
}

}  // namespace contraplan
