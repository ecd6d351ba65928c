#pragma once

#include <cstddef>

// Trace instrumentation for information hygiene: planner code must never read
// the harness's hidden world realization.
namespace contraplan::audit {

/// Marks the current thread as running planner code while alive.
class PlannerScope {
 public:
  PlannerScope();
  ~PlannerScope();
  PlannerScope(const PlannerScope&) = delete;
  PlannerScope& operator=(const PlannerScope&) = delete;
};

bool in_planner();

/// Called on every read of a hidden realization.
void record_hidden_read();

struct Counters {
  std::size_t hidden_reads = 0;
  std::size_t hidden_reads_in_planner = 0;
  std::size_t planner_scopes = 0;
};

Counters counters();
void reset();

}  // namespace contraplan::audit
