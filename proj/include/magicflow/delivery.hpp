#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "magicflow/schedule.hpp"

namespace magicflow {

// Delivery capacity c (T-states per logical step, >= 1) and buffer
// capacity b (T-state units, >= 0).
struct DeliveryParams {
  std::int64_t c = 1;
  std::int64_t b = 0;
  bool operator==(const DeliveryParams&) const = default;
};

// Outcome of executing one demand trace under bounded delivery.
// `finite` is false for traces rejected by the atomic-step model
// (some D(t) > b + c); delta_max, lower_bound and backlog_intervals are
// still populated in that case.
struct ExecResult {
  DeliveryParams params;
  std::int64_t t_static = 0;
  bool finite = true;
  std::int64_t t_exe = 0;  // meaningful only when finite
  std::int64_t stall_cycles = 0;
  bool stalled = false;
  std::int64_t delta_max = 0;
  std::int64_t lower_bound = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> backlog_intervals;
  std::optional<double> slowdown;  // t_exe / t_static, finite case only
  bool cycle_capped = false;       // stochastic runs only

  bool operator==(const ExecResult&) const = default;
};

// Prefix sums A(1..T) of the demand trace.
std::vector<std::int64_t> cumulative_demand(const DemandTrace& trace);

// max_t (A(t) - c*t); 0 for an empty trace. May be negative.
std::int64_t delta_max(const DemandTrace& trace, std::int64_t c);

// t_static + ceil(max(0, dmax - b) / c).
std::int64_t lower_bound(std::int64_t t_static, std::int64_t dmax,
                         DeliveryParams params);

// Atomic-step feasibility: every step's demand fits within b + c.
bool feasible(const DemandTrace& trace, DeliveryParams params);

// Maximal runs of steps t with A(t) > c*t + b, as inclusive 1-based ranges.
std::vector<std::pair<std::int64_t, std::int64_t>> backlog_intervals(
    const DemandTrace& trace, DeliveryParams params);

// Cycle-accurate execution. The buffer starts full; c states are produced
// per wall-clock cycle and are usable within it; post-step stock is capped
// at b and overflow is wasted. A step runs once stock + production covers
// its demand; every shortfall cycle counts as a stall.
ExecResult simulate(const DemandTrace& trace, DeliveryParams params);

// T-depth inversion between a statically shorter schedule and a
// statically longer one under identical delivery params. An infeasible
// result orders above every finite makespan. Throws MismatchedParams.
bool detect_inversion(const ExecResult& static_res, const ExecResult& other_res);

}  // namespace magicflow
