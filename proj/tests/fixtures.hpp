// Small hand-built DAG fixtures shared across the unit tests.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "magicflow/dag.hpp"

namespace fixtures {

inline magicflow::CircuitDag build(
    const std::vector<std::pair<std::int64_t, bool>>& nodes,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  magicflow::CircuitDag dag;
  for (const auto& [id, is_t] : nodes) dag.nodes.push_back({id, is_t});
  dag.edges = edges;
  return dag;
}

// n T nodes 0 -> 1 -> ... -> n-1.
inline magicflow::CircuitDag chain_t(int n) {
  magicflow::CircuitDag dag;
  for (int i = 0; i < n; ++i) dag.nodes.push_back({i, true});
  for (int i = 0; i + 1 < n; ++i) dag.edges.push_back({i, i + 1});
  return dag;
}

// n independent T nodes.
inline magicflow::CircuitDag independent_t(int n) {
  magicflow::CircuitDag dag;
  for (int i = 0; i < n; ++i) dag.nodes.push_back({i, true});
  return dag;
}

// a->b, a->c, b->d, c->d; all T.
inline magicflow::CircuitDag diamond_t() {
  return build({{0, true}, {1, true}, {2, true}, {3, true}},
               {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

}  // namespace fixtures
