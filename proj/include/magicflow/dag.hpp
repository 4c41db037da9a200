#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "magicflow/error.hpp"

namespace magicflow {

struct DagNode {
  std::int64_t id = 0;
  bool is_t = false;
};

// Dependency DAG of circuit operations. Nodes carry a T flag; edges are
// (pred_id, succ_id) precedence constraints. An empty DAG is valid.
struct CircuitDag {
  std::vector<DagNode> nodes;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
};

// Structural validation: unique ids, edges referencing existing ids, no
// self-loops or duplicate edges, acyclic. Returns the first problem found.
// Error kinds: DuplicateId, DanglingEdge, SelfLoop, DuplicateEdge,
// CycleDetected (message lists one cycle).
std::optional<Error> validate(const CircuitDag& dag);

// Indexed adjacency view over a validated DAG. Index i refers to
// dag.nodes[i]; `topo` is a topological order of those indices.
// Throws Error if the input does not validate.
class DagView {
 public:
  static DagView build(const CircuitDag& dag);
  // The view only references the DAG; building one over a temporary would
  // leave it dangling.
  static DagView build(CircuitDag&&) = delete;

  int size() const { return static_cast<int>(preds_.size()); }
  bool is_t(int i) const { return dag_->nodes[i].is_t; }
  std::int64_t id(int i) const { return dag_->nodes[i].id; }
  const std::vector<int>& preds(int i) const { return preds_[i]; }
  const std::vector<int>& succs(int i) const { return succs_[i]; }
  const std::vector<int>& topo() const { return topo_; }
  const CircuitDag& dag() const { return *dag_; }
  int index_of(std::int64_t id) const;  // -1 if unknown

 private:
  const CircuitDag* dag_ = nullptr;
  std::vector<std::vector<int>> preds_, succs_;
  std::vector<int> topo_;
  std::unordered_map<std::int64_t, int> index_;
};

std::int64_t t_count(const CircuitDag& dag);

// Maximum number of T nodes on any directed path; 0 for a T-free DAG.
std::int64_t t_depth(const DagView& view);
std::int64_t t_depth(const CircuitDag& dag);

// Earliest start levels, 0-based: 0 for sources, 1 + max pred otherwise.
// Every operation (T or not) occupies one level.
std::vector<std::int64_t> asap_levels(const DagView& view);

// Latest start levels at the given horizon: horizon - 1 for sinks,
// min succ - 1 otherwise. Throws HorizonTooSmall when the horizon is
// below the critical-path makespan.
std::vector<std::int64_t> alap_levels(const DagView& view, std::int64_t horizon);

struct SlackAnalysis {
  std::vector<std::int64_t> es, ls, slack;  // aligned with dag.nodes
  std::int64_t horizon = 0;                 // critical-path makespan in levels
  std::optional<double> slack_ratio;        // absent when there are no T gates
};

// ASAP/ALAP at horizon = critical-path makespan. slack_ratio is the
// fraction of T gates with positive slack. Single pass each direction,
// linear in |V| + |E|.
SlackAnalysis slack_analysis(const DagView& view);
SlackAnalysis slack_analysis(const CircuitDag& dag);

}  // namespace magicflow
