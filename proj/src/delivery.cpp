#include "magicflow/delivery.hpp"

#include <algorithm>

namespace magicflow {

std::vector<std::int64_t> cumulative_demand(const DemandTrace& trace) {
  std::vector<std::int64_t> acc(trace.demands.size());
  std::int64_t running = 0;
  for (std::size_t i = 0; i < trace.demands.size(); ++i) {
    running += trace.demands[i];
    acc[i] = running;
  }
  return acc;
}

std::int64_t delta_max(const DemandTrace& trace, std::int64_t c) {
  std::int64_t best = 0;
  std::int64_t acc = 0;
  bool first = true;
  std::int64_t t = 0;
  for (std::int64_t d : trace.demands) {
    acc += d;
    ++t;
    std::int64_t surplus = acc - c * t;
    if (first || surplus > best) best = surplus;
    first = false;
  }
  return trace.demands.empty() ? 0 : best;
}

std::int64_t lower_bound(std::int64_t t_static, std::int64_t dmax,
                         DeliveryParams params) {
  std::int64_t backlog = std::max<std::int64_t>(0, dmax - params.b);
  return t_static + (backlog + params.c - 1) / params.c;
}

bool feasible(const DemandTrace& trace, DeliveryParams params) {
  for (std::int64_t d : trace.demands)
    if (d > params.b + params.c) return false;
  return true;
}

std::vector<std::pair<std::int64_t, std::int64_t>> backlog_intervals(
    const DemandTrace& trace, DeliveryParams params) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < trace.demands.size(); ++i) {
    acc += trace.demands[i];
    std::int64_t t = static_cast<std::int64_t>(i) + 1;
    bool active = acc > params.c * t + params.b;
    if (active) {
      if (!out.empty() && out.back().second == t - 1)
        out.back().second = t;
      else
        out.emplace_back(t, t);
    }
  }
  return out;
}

ExecResult simulate(const DemandTrace& trace, DeliveryParams params) {
  ExecResult res;
  res.params = params;
  res.t_static = static_cast<std::int64_t>(trace.demands.size());
  res.delta_max = delta_max(trace, params.c);
  res.lower_bound = lower_bound(res.t_static, res.delta_max, params);
  res.backlog_intervals = backlog_intervals(trace, params);
  if (!feasible(trace, params)) {
    res.finite = false;
    return res;
  }
  std::int64_t stock = params.b;
  std::int64_t tau = 0;
  for (std::int64_t demand : trace.demands) {
    for (;;) {
      ++tau;
      std::int64_t avail = stock + params.c;
      if (demand <= avail) {
        stock = std::min(avail - demand, params.b);
        break;
      }
      ++res.stall_cycles;
      stock = std::min(avail, params.b);
    }
  }
  res.t_exe = tau;
  res.stalled = res.stall_cycles > 0;
  if (res.t_static >= 1)
    res.slowdown = static_cast<double>(res.t_exe) /
                   static_cast<double>(res.t_static);
  return res;
}

bool detect_inversion(const ExecResult& static_res,
                      const ExecResult& other_res) {
  if (!(static_res.params == other_res.params))
    throw Error("MismatchedParams",
                "inversion comparison requires identical (c, b)");
  if (static_res.t_static >= other_res.t_static) return false;
  // INFEASIBLE > any finite makespan; two infeasibles do not compare.
  if (!static_res.finite) return other_res.finite;
  if (!other_res.finite) return false;
  return static_res.t_exe > other_res.t_exe;
}

}  // namespace magicflow
