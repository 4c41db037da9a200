#include "magicflow/dag.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace magicflow {

namespace {

struct Indexed {
  std::unordered_map<std::int64_t, int> index;
  std::vector<std::vector<int>> preds, succs;
  std::optional<Error> error;
};

Indexed index_dag(const CircuitDag& dag) {
  Indexed out;
  out.index.reserve(dag.nodes.size());
  for (int i = 0; i < static_cast<int>(dag.nodes.size()); ++i) {
    auto [it, fresh] = out.index.emplace(dag.nodes[i].id, i);
    if (!fresh) {
      out.error = Error("DuplicateId",
                        "node id " + std::to_string(dag.nodes[i].id) +
                            " appears more than once");
      return out;
    }
  }
  out.preds.resize(dag.nodes.size());
  out.succs.resize(dag.nodes.size());
  std::unordered_set<std::uint64_t> seen_edges;
  seen_edges.reserve(dag.edges.size());
  for (const auto& [u, v] : dag.edges) {
    auto iu = out.index.find(u);
    auto iv = out.index.find(v);
    if (iu == out.index.end() || iv == out.index.end()) {
      out.error = Error("DanglingEdge",
                        "edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") references an unknown node id");
      return out;
    }
    if (u == v) {
      out.error = Error("SelfLoop", "self-loop on node " + std::to_string(u));
      return out;
    }
    std::uint64_t key = (static_cast<std::uint64_t>(iu->second) << 32) |
                        static_cast<std::uint32_t>(iv->second);
    if (!seen_edges.insert(key).second) {
      out.error = Error("DuplicateEdge", "edge (" + std::to_string(u) + "," +
                                             std::to_string(v) + ") repeated");
      return out;
    }
    out.succs[iu->second].push_back(iv->second);
    out.preds[iv->second].push_back(iu->second);
  }
  return out;
}

// Kahn topological sort; on a cycle, returns an empty order.
std::vector<int> topo_order(const std::vector<std::vector<int>>& preds,
                            const std::vector<std::vector<int>>& succs) {
  int n = static_cast<int>(preds.size());
  std::vector<int> indeg(n);
  std::vector<int> order;
  order.reserve(n);
  for (int i = 0; i < n; ++i) indeg[i] = static_cast<int>(preds[i].size());
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) order.push_back(i);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int s : succs[order[head]])
      if (--indeg[s] == 0) order.push_back(s);
  }
  if (static_cast<int>(order.size()) != n) order.clear();
  return order;
}

// Walks predecessor links among unfinished nodes to exhibit one cycle.
std::string find_cycle_message(const CircuitDag& dag, const Indexed& ix) {
  int n = static_cast<int>(dag.nodes.size());
  std::vector<int> order = topo_order(ix.preds, ix.succs);
  std::vector<char> in_cycle_region(n, 1);
  for (int i : order) in_cycle_region[i] = 0;
  int start = 0;
  while (start < n && !in_cycle_region[start]) ++start;
  // Follow predecessors inside the cyclic region until a node repeats.
  std::vector<int> path;
  std::vector<int> pos(n, -1);
  int cur = start;
  while (pos[cur] < 0) {
    pos[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    for (int p : ix.preds[cur])
      if (in_cycle_region[p]) {
        cur = p;
        break;
      }
  }
  std::ostringstream oss;
  oss << "cycle:";
  for (int i = static_cast<int>(path.size()) - 1; i >= pos[cur]; --i)
    oss << ' ' << dag.nodes[path[i]].id;
  return oss.str();
}

}  // namespace

std::optional<Error> validate(const CircuitDag& dag) {
  Indexed ix = index_dag(dag);
  if (ix.error) return ix.error;
  if (!dag.nodes.empty() && topo_order(ix.preds, ix.succs).empty())
    return Error("CycleDetected", find_cycle_message(dag, ix));
  return std::nullopt;
}

DagView DagView::build(const CircuitDag& dag) {
  Indexed ix = index_dag(dag);
  if (ix.error) throw *ix.error;
  DagView view;
  view.dag_ = &dag;
  view.preds_ = std::move(ix.preds);
  view.succs_ = std::move(ix.succs);
  view.index_ = std::move(ix.index);
  view.topo_ = topo_order(view.preds_, view.succs_);
  if (!dag.nodes.empty() && view.topo_.empty())
    throw Error("CycleDetected", find_cycle_message(dag, index_dag(dag)));
  return view;
}

int DagView::index_of(std::int64_t id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

std::int64_t t_count(const CircuitDag& dag) {
  std::int64_t n = 0;
  for (const auto& node : dag.nodes) n += node.is_t ? 1 : 0;
  return n;
}

std::int64_t t_depth(const DagView& view) {
  std::vector<std::int64_t> best(view.size(), 0);
  std::int64_t depth = 0;
  for (int i : view.topo()) {
    std::int64_t from_preds = 0;
    for (int p : view.preds(i)) from_preds = std::max(from_preds, best[p]);
    best[i] = from_preds + (view.is_t(i) ? 1 : 0);
    depth = std::max(depth, best[i]);
  }
  return depth;
}

std::int64_t t_depth(const CircuitDag& dag) {
  return t_depth(DagView::build(dag));
}

std::vector<std::int64_t> asap_levels(const DagView& view) {
  std::vector<std::int64_t> es(view.size(), 0);
  for (int i : view.topo()) {
    for (int p : view.preds(i)) es[i] = std::max(es[i], es[p] + 1);
  }
  return es;
}

std::vector<std::int64_t> alap_levels(const DagView& view,
                                      std::int64_t horizon) {
  std::vector<std::int64_t> es = asap_levels(view);
  std::int64_t makespan = 0;
  for (int i = 0; i < view.size(); ++i) makespan = std::max(makespan, es[i] + 1);
  if (view.size() == 0) makespan = 0;
  if (horizon < makespan)
    throw Error("HorizonTooSmall",
                "horizon " + std::to_string(horizon) +
                    " below critical-path makespan " + std::to_string(makespan));
  std::vector<std::int64_t> ls(view.size(), horizon - 1);
  const auto& order = view.topo();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (int s : view.succs(*it)) ls[*it] = std::min(ls[*it], ls[s] - 1);
  }
  return ls;
}

SlackAnalysis slack_analysis(const DagView& view) {
  SlackAnalysis sa;
  sa.es = asap_levels(view);
  for (int i = 0; i < view.size(); ++i)
    sa.horizon = std::max(sa.horizon, sa.es[i] + 1);
  sa.ls = view.size() == 0 ? std::vector<std::int64_t>{}
                           : alap_levels(view, sa.horizon);
  sa.slack.resize(view.size());
  std::int64_t t_total = 0, t_flexible = 0;
  for (int i = 0; i < view.size(); ++i) {
    sa.slack[i] = sa.ls[i] - sa.es[i];
    if (view.is_t(i)) {
      ++t_total;
      if (sa.slack[i] > 0) ++t_flexible;
    }
  }
  if (t_total > 0)
    sa.slack_ratio = static_cast<double>(t_flexible) / static_cast<double>(t_total);
  return sa;
}

SlackAnalysis slack_analysis(const CircuitDag& dag) {
  return slack_analysis(DagView::build(dag));
}

}  // namespace magicflow
