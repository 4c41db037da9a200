#include "magicflow/workload.hpp"

#include <algorithm>

#include "magicflow/rng.hpp"

namespace magicflow {

const char* family_name(Family f) {
  switch (f) {
    case Family::High: return "high";
    case Family::Medium: return "medium";
    case Family::Low: return "low";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "high") return Family::High;
  if (name == "medium") return Family::Medium;
  if (name == "low") return Family::Low;
  return std::nullopt;
}

namespace {

// Family wiring profile: how far back sampled edges may reach, and how
// the critical path is pinned to the layer count. A backbone chains every
// column (dense near-sequential wiring); a spine chains only column 0,
// leaving the other columns to float on sparse long-range edges.
struct Wiring {
  std::int64_t reach = 1;
  bool backbone = false;
  bool spine = false;
};

Wiring wiring_for(Family f) {
  switch (f) {
    case Family::High: return {8, false, true};
    case Family::Medium: return {1, false, false};
    case Family::Low: return {1, true, false};
  }
  return {};
}

}  // namespace

FamilyParams default_params(Family f, std::uint64_t seed) {
  FamilyParams p;
  p.family = f;
  p.seed = seed;
  switch (f) {
    case Family::High:
      p.layers = 107;
      p.width = 4;
      p.edge_density = 0.12;
      break;
    case Family::Medium:
      p.layers = 160;
      p.width = 2;
      p.edge_density = 0.5;
      break;
    case Family::Low:
      p.layers = 320;
      p.width = 1;
      p.edge_density = 0.8;
      break;
  }
  return p;
}

CircuitDag generate(const FamilyParams& params) {
  if (params.layers < 1 || params.width < 1)
    throw Error("InvalidParams", "layers and width must be >= 1");
  if (!(params.t_fraction > 0.0) || params.t_fraction > 1.0)
    throw Error("InvalidParams", "t_fraction must be in (0, 1]");
  if (params.edge_density < 0.0 || params.edge_density > 1.0)
    throw Error("InvalidParams", "edge_density must be in [0, 1]");

  const std::int64_t layers = params.layers;
  const std::int64_t width = params.width;
  const Wiring wiring = wiring_for(params.family);
  SplitMix64 rng(params.seed);

  CircuitDag dag;
  dag.nodes.reserve(static_cast<std::size_t>(layers * width));
  for (std::int64_t k = 0; k < layers; ++k) {
    for (std::int64_t j = 0; j < width; ++j) {
      bool is_t = params.t_fraction >= 1.0 ||
                  rng.next_double() < params.t_fraction;
      dag.nodes.push_back({k * width + j, is_t});
    }
  }

  // Edge sampling walks candidate pairs in canonical (layer, index)
  // order; determinism must not depend on container iteration order.
  // Every non-source-layer node that samples no predecessor gets a
  // fallback predecessor inside its reach window: without it, orphan
  // nodes from every layer pile into ASAP step 1 and produce one huge
  // step-1 burst that is infeasible across the whole delivery grid.
  for (std::int64_t k2 = 1; k2 < layers; ++k2) {
    std::int64_t k_lo = std::max<std::int64_t>(0, k2 - wiring.reach);
    for (std::int64_t j2 = 0; j2 < width; ++j2) {
      bool spine_here = wiring.spine && j2 == 0 && params.edge_density > 0.0;
      if (spine_here)
        dag.edges.emplace_back((k2 - 1) * width, k2 * width);
      bool has_pred = spine_here;
      for (std::int64_t k1 = k_lo; k1 < k2; ++k1) {
        for (std::int64_t j1 = 0; j1 < width; ++j1) {
          if (spine_here && k1 == k2 - 1 && j1 == 0) continue;  // already wired
          if (rng.next_double() < params.edge_density) {
            dag.edges.emplace_back(k1 * width + j1, k2 * width + j2);
            has_pred = true;
          }
        }
      }
      // Zero density explicitly requests an unwired layer stack, so the
      // fallback applies only to sampled (positive-density) wirings.
      if (!has_pred && params.edge_density > 0.0) {
        if (wiring.backbone) {
          dag.edges.emplace_back((k2 - 1) * width + j2, k2 * width + j2);
        } else {
          std::int64_t k1 =
              k2 - 1 - static_cast<std::int64_t>(
                           rng.next_below(static_cast<std::uint64_t>(k2 - k_lo)));
          std::int64_t j1 =
              static_cast<std::int64_t>(rng.next_below(
                  static_cast<std::uint64_t>(width)));
          dag.edges.emplace_back(k1 * width + j1, k2 * width + j2);
        }
      }
    }
  }
  return dag;
}

std::vector<FamilyParams> default_sweep_families() {
  std::vector<FamilyParams> out;
  for (Family f : {Family::High, Family::Medium, Family::Low})
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      out.push_back(default_params(f, seed));
  return out;
}

}  // namespace magicflow
