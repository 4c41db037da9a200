#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "magicflow/dag.hpp"

namespace magicflow {

enum class Family { High, Medium, Low };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

// Parameters for the layered constructed-family generator. Identical
// params (including seed) always produce an identical DAG.
struct FamilyParams {
  Family family = Family::Medium;
  std::int64_t layers = 1;
  std::int64_t width = 1;
  double t_fraction = 1.0;
  double edge_density = 0.0;
  std::uint64_t seed = 0;
};

// Family defaults. The three families share a layered skeleton but differ
// in dimensions, edge density and reach, chosen to produce clearly
// separated slack-ratio regimes: sparse long-range wiring (High), moderate
// short-range wiring (Medium), and a dense near-chain (Low).
FamilyParams default_params(Family f, std::uint64_t seed);

// Layered DAG generation. Nodes are arranged in `layers` layers of
// `width`; edges go from earlier to strictly later layers, sampled with
// probability edge_density over a family-specific layer window. The Low
// family additionally wires a spanning backbone (every node in layer k+1
// gets a predecessor in layer k) so the critical path spans all layers.
// Throws InvalidParams.
CircuitDag generate(const FamilyParams& params);

// 3 families x 5 seeds, the sweep's workload axis.
std::vector<FamilyParams> default_sweep_families();

}  // namespace magicflow
