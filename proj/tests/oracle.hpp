// Independent brute-force re-derivation of the bounded-delivery execution
// rules, written from the model description rather than from the library
// implementation. Used as the ground-truth oracle in the exhaustive
// agreement and soundness checks.
#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

struct Outcome {
  bool feasible = true;
  std::int64_t t_exe = 0;
  std::int64_t stalls = 0;
  std::int64_t dmax = 0;
  std::int64_t bound = 0;
};

inline Outcome run(const std::vector<std::int64_t>& demand, std::int64_t c,
                   std::int64_t b) {
  Outcome out;

  // Peak cumulative surplus, recomputed from scratch at every step
  // (deliberately quadratic and naive).
  if (!demand.empty()) {
    bool first = true;
    for (std::size_t t = 1; t <= demand.size(); ++t) {
      std::int64_t cum = 0;
      for (std::size_t k = 0; k < t; ++k) cum += demand[k];
      std::int64_t surplus = cum - c * static_cast<std::int64_t>(t);
      if (first || surplus > out.dmax) out.dmax = surplus;
      first = false;
    }
  }

  // Makespan bound: t_static plus ceiling of the uncovered backlog.
  std::int64_t over = out.dmax - b;
  if (over < 0) over = 0;
  out.bound = static_cast<std::int64_t>(demand.size()) + (over + c - 1) / c;

  for (std::int64_t d : demand)
    if (d > b + c) out.feasible = false;
  if (!out.feasible) return out;

  // Wall-clock loop with an explicit step cursor: each cycle produces c
  // usable states on top of the stored stock; a step retires when covered,
  // otherwise the cycle is a stall. Leftover stock is clamped to b.
  std::int64_t stock = b;
  std::int64_t cycles = 0;
  std::size_t cursor = 0;
  while (cursor < demand.size()) {
    ++cycles;
    std::int64_t usable = stock + c;
    if (usable >= demand[cursor]) {
      stock = usable - demand[cursor];
      ++cursor;
    } else {
      ++out.stalls;
      stock = usable;
    }
    if (stock > b) stock = b;
  }
  out.t_exe = cycles;
  return out;
}

// Every demand trace of length <= max_len with per-step demand <= max_d,
// in lexicographic order (the empty trace included).
inline std::vector<std::vector<std::int64_t>> all_traces(int max_len,
                                                         std::int64_t max_d) {
  std::vector<std::vector<std::int64_t>> out{{}};
  std::vector<std::vector<std::int64_t>> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& prefix : frontier)
      for (std::int64_t d = 0; d <= max_d; ++d) {
        auto t = prefix;
        t.push_back(d);
        next.push_back(std::move(t));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace oracle
