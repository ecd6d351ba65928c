#include "contraplan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "contraplan/errors.hpp"

namespace contraplan {

void EdgeCosts::validate() const {
  if (!(robust > 0.0 && non_robust > 0.0)) throw ConfigError("edge costs must be positive");
  if (!(robust < non_robust)) throw ConfigError("robust edge cost must be below the non-robust edge cost");
}

double edge_cost(std::size_t i, std::size_t j, bool robust, const EdgeCosts& costs) {
  if (i >= j) throw IndexError("edge (" + std::to_string(i) + ", " + std::to_string(j) + ") is not forward in time");
  const auto span = static_cast<double>(j - i);
  return robust ? costs.robust / span : costs.non_robust * span;
}

RobustnessGraph::RobustnessGraph(const DivergenceProfile& profile, const EdgeCosts& costs)
    : RobustnessGraph(profile.per_step_expected, costs) {}

RobustnessGraph::RobustnessGraph(std::vector<double> per_step_expected, const EdgeCosts& costs) {
  costs.validate();
  if (per_step_expected.empty()) throw std::invalid_argument("robustness graph needs N >= 1");
  DivergenceProfile p;
  p.per_step_expected = std::move(per_step_expected);
  nodes_ = p.per_step_expected.size() + 1;
  edges_.reserve(nodes_ * (nodes_ - 1) / 2);
  for (std::size_t i = 0; i + 1 < nodes_; ++i) {
    for (std::size_t j = i + 1; j < nodes_; ++j) {
      GraphEdge e;
      e.from = i;
      e.to = j;
      e.metric = segment_metric(p, i, j);
      e.robust = e.metric < 1.0;
      e.cost = edge_cost(i, j, e.robust, costs);
      edges_.push_back(e);
    }
  }
}

std::size_t RobustnessGraph::index(std::size_t i, std::size_t j) const {
  // Row i holds edges (i, i+1) .. (i, N).
  const std::size_t n = nodes_ - 1;
  return i * n - i * (i - 1) / 2 + (j - i - 1);
}

const GraphEdge& RobustnessGraph::edge(std::size_t i, std::size_t j) const {
  if (i >= j || j >= nodes_) throw IndexError("no edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  return edges_[index(i, j)];
}

RobustnessGraph build_robustness_graph(const DivergenceProfile& profile, const EdgeCosts& costs) {
  return RobustnessGraph(profile, costs);
}

std::string_view to_string(SegmentKind k) { return k == SegmentKind::robust ? "robust" : "non_robust"; }

bool SegmentPlan::is_contiguous(std::size_t horizon) const {
  if (segments.empty() || segments.front().start != 0 || segments.back().end != horizon) return false;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (segments[k].start >= segments[k].end) return false;
    if (k > 0 && segments[k].start != segments[k - 1].end) return false;
  }
  return true;
}

std::size_t SegmentPlan::robust_steps() const {
  std::size_t n = 0;
  for (const auto& s : segments)
    if (s.kind == SegmentKind::robust) n += s.end - s.start;
  return n;
}

namespace {

struct Label {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t segments = 0;
  std::vector<bool> robust_steps;  // per step, in time order
  std::vector<std::size_t> path;   // node indices
};

bool tied(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Strict preference: cheaper, then fewer segments, then robust earlier.
bool better(const Label& a, const Label& b) {
  if (!tied(a.cost, b.cost)) return a.cost < b.cost;
  if (a.segments != b.segments) return a.segments < b.segments;
  for (std::size_t t = 0; t < a.robust_steps.size() && t < b.robust_steps.size(); ++t)
    if (a.robust_steps[t] != b.robust_steps[t]) return a.robust_steps[t];
  return false;
}

}  // namespace

SegmentPlan min_cost_path(const RobustnessGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<Label> best(n);
  best[0].cost = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const GraphEdge& e = graph.edge(i, j);
      Label cand;
      cand.cost = best[i].cost + e.cost;
      cand.segments = best[i].segments + 1;
      cand.robust_steps = best[i].robust_steps;
      cand.robust_steps.insert(cand.robust_steps.end(), j - i, e.robust);
      if (!better(cand, best[j])) continue;
      cand.path = best[i].path;
      cand.path.push_back(i);
      best[j] = std::move(cand);
    }
  }

  const Label& goal = best[n - 1];
  SegmentPlan plan;
  plan.total_cost = goal.cost;
  std::vector<std::size_t> nodes = goal.path;
  nodes.push_back(n - 1);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const GraphEdge& e = graph.edge(nodes[k], nodes[k + 1]);
    const SegmentKind kind = e.robust ? SegmentKind::robust : SegmentKind::non_robust;
    if (kind == SegmentKind::non_robust && !plan.segments.empty() &&
        plan.segments.back().kind == SegmentKind::non_robust) {
      Segment& last = plan.segments.back();
      last.end = e.to;
      last.metric *= e.metric;
      continue;
    }
    plan.segments.push_back({e.from, e.to, kind, e.metric});
  }
  return plan;
}

}  // namespace contraplan
