#include "contraplan/audit.hpp"

#include <atomic>

namespace contraplan::audit {
namespace {
thread_local int planner_depth = 0;
std::atomic<std::size_t> hidden_reads{0};
std::atomic<std::size_t> hidden_reads_in_planner{0};
std::atomic<std::size_t> planner_scopes{0};
}  // namespace

PlannerScope::PlannerScope() {
  ++planner_depth;
  planner_scopes.fetch_add(1, std::memory_order_relaxed);
}

PlannerScope::~PlannerScope() { --planner_depth; }

bool in_planner() { return planner_depth > 0; }

void record_hidden_read() {
  hidden_reads.fetch_add(1, std::memory_order_relaxed);
  if (in_planner()) hidden_reads_in_planner.fetch_add(1, std::memory_order_relaxed);
}

Counters counters() {
  return {hidden_reads.load(), hidden_reads_in_planner.load(), planner_scopes.load()};
}

void reset() {
  hidden_reads = 0;
  hidden_reads_in_planner = 0;
  planner_scopes = 0;
}

}  // namespace contraplan::audit
