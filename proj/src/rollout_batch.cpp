#include "contraplan/rollout_batch.hpp"

#include <exception>

namespace contraplan {

std::vector<Trajectory> rollout_batch_serial(std::span<const PlanarWorld> worlds, std::span<const RolloutTask> tasks,
                                             const ControlSequence& controls, double dt) {
  std::vector<Trajectory> out(tasks.size());
  for (std::size_t k = 0; k < tasks.size(); ++k)
    out[k] = rollout(worlds[tasks[k].world], *tasks[k].start, controls, dt);
  return out;
}

std::vector<Trajectory> rollout_batch_parallel(std::span<const PlanarWorld> worlds,
                                               std::span<const RolloutTask> tasks, const ControlSequence& controls,
                                               double dt, int jobs) {
  std::vector<Trajectory> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  const auto n = static_cast<long long>(tasks.size());
#pragma omp parallel for schedule(static) num_threads(jobs)
  for (long long k = 0; k < n; ++k) {
    try {
      out[k] = rollout(worlds[tasks[k].world], *tasks[k].start, controls, dt);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace contraplan
