#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "contraplan/metrics.hpp"

namespace contraplan {

struct EdgeCosts {
  double robust = 1.0;        // c_ro
  double non_robust = 1000.0; // c_nr

  void validate() const;
  bool operator==(const EdgeCosts&) const = default;
};

/// c_ro / (j - i) for robust edges, c_nr * (j - i) otherwise.
double edge_cost(std::size_t i, std::size_t j, bool robust, const EdgeCosts& costs);

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double metric = 0.0;
  bool robust = false;
  double cost = 0.0;
};

/// Dense DAG over time points 0..N with one edge per pair i < j.
class RobustnessGraph {
 public:
  RobustnessGraph(const DivergenceProfile& profile, const EdgeCosts& costs);
  RobustnessGraph(std::vector<double> per_step_expected, const EdgeCosts& costs);

  std::size_t node_count() const { return nodes_; }
  const GraphEdge& edge(std::size_t i, std::size_t j) const;
  const std::vector<GraphEdge>& edges() const { return edges_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t nodes_ = 0;
  std::vector<GraphEdge> edges_;
};

RobustnessGraph build_robustness_graph(const DivergenceProfile& profile, const EdgeCosts& costs);

enum class SegmentKind { robust, non_robust };
std::string_view to_string(SegmentKind k);

struct Segment {
  std::size_t start = 0;
  std::size_t end = 0;
  SegmentKind kind = SegmentKind::non_robust;
  double metric = 0.0;
  bool operator==(const Segment&) const = default;
};

struct SegmentPlan {
  std::vector<Segment> segments;
  double total_cost = 0.0;

  bool is_contiguous(std::size_t horizon) const;
  std::size_t robust_steps() const;
};

/// Exact shortest path 0 -> N by dynamic programming in topological order.
/// Equal-cost paths prefer fewer segments, then earlier robust coverage.
/// Adjacent non-robust segments are merged.
SegmentPlan min_cost_path(const RobustnessGraph& graph);

}  // namespace contraplan
