#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace contraplan {

/// Number of parallel lanes for batch kernels. 1 selects the serial path.
struct Parallelism {
  int jobs = 1;
  bool operator==(const Parallelism&) const = default;
};

/// Applies CONTRAPLAN_JOBS (when set) over the requested lane count.
int resolve_jobs(int requested);

namespace detail {
void parallel_indices(std::size_t n, int jobs, void (*body)(void*, std::size_t), void* ctx);
}

/// Runs fn(i) for i in [0, n). Serial when jobs <= 1, an OpenMP static
/// schedule otherwise. fn must only write to slot i of its outputs. If any
/// call throws, the exception of the lowest failing index is rethrown after
/// the batch completes, so serial and parallel runs fail identically.
template <class Fn>
void for_each_index(std::size_t n, Parallelism par, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  struct Ctx {
    Fn* fn;
    std::vector<std::exception_ptr>* errors;
  } ctx{&fn, &errors};
  auto body = [](void* raw, std::size_t i) {
    auto* c = static_cast<Ctx*>(raw);
    try {
      (*c->fn)(i);
    } catch (...) {
      (*c->errors)[i] = std::current_exception();
    }
  };
  if (par.jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(&ctx, i);
  } else {
    detail::parallel_indices(n, par.jobs, body, &ctx);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace contraplan
