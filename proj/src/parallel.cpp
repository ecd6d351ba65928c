#include "contraplan/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace contraplan {

int resolve_jobs(int requested) {
  if (const char* env = std::getenv("CONTRAPLAN_JOBS"); env && *env) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return requested < 1 ? 1 : requested;
}

namespace detail {

void parallel_indices(std::size_t n, int jobs, void (*body)(void*, std::size_t), void* ctx) {
#ifdef _OPENMP
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(jobs)
  for (long long i = 0; i < count; ++i) body(ctx, static_cast<std::size_t>(i));
#else
  (void)jobs;
  for (std::size_t i = 0; i < n; ++i) body(ctx, i);
#endif
}

}  // namespace detail
}  // namespace contraplan
