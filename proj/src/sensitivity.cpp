#include "magicflow/sensitivity.hpp"

#include <algorithm>

#include "magicflow/rng.hpp"

namespace magicflow {

namespace {

double deficit_at_rate(const DemandTrace& trace, double rate) {
  double best = 0.0;
  double acc = 0.0;
  bool first = true;
  std::int64_t t = 0;
  for (std::int64_t d : trace.demands) {
    acc += static_cast<double>(d);
    ++t;
    double surplus = acc - rate * static_cast<double>(t);
    if (first || surplus > best) best = surplus;
    first = false;
  }
  return trace.demands.empty() ? 0.0 : best;
}

}  // namespace

std::vector<ExecResult> simulate_stochastic(const DemandTrace& trace,
                                            DeliveryParams params,
                                            const StochasticParams& sp) {
  if (!(sp.p_acc > 0.0) || sp.p_acc > 1.0)
    throw Error("InvalidParams", "p_acc must be in (0, 1]");
  if (sp.replications < 1)
    throw Error("InvalidParams", "replications must be >= 1");

  ExecResult base = simulate(trace, params);  // nominal feasibility + bound
  std::int64_t cap = sp.cycle_cap > 0 ? sp.cycle_cap
                                      : 50 * base.lower_bound + 1000;
  std::vector<ExecResult> out;
  out.reserve(static_cast<std::size_t>(sp.replications));
  for (int r = 0; r < sp.replications; ++r) {
    if (!base.finite) {
      out.push_back(base);
      continue;
    }
    SplitMix64 rng(sp.seed + static_cast<std::uint64_t>(r));
    ExecResult res = base;
    res.stall_cycles = 0;
    std::int64_t stock = params.b;
    std::int64_t tau = 0;
    bool capped = false;
    for (std::int64_t demand : trace.demands) {
      for (;;) {
        ++tau;
        if (tau > cap) {
          capped = true;
          break;
        }
        std::int64_t produced = 0;
        for (std::int64_t i = 0; i < params.c; ++i)
          if (rng.next_double() < sp.p_acc) ++produced;
        std::int64_t avail = stock + produced;
        if (demand <= avail) {
          stock = std::min(avail - demand, params.b);
          break;
        }
        ++res.stall_cycles;
        stock = std::min(avail, params.b);
      }
      if (capped) break;
    }
    if (capped) {
      res.finite = false;
      res.cycle_capped = true;
      res.t_exe = 0;
      res.stalled = res.stall_cycles > 0;
      res.slowdown.reset();
    } else {
      res.t_exe = tau;
      res.stalled = res.stall_cycles > 0;
      if (res.t_static >= 1)
        res.slowdown = static_cast<double>(res.t_exe) /
                       static_cast<double>(res.t_static);
      else
        res.slowdown.reset();
    }
    out.push_back(res);
  }
  return out;
}

double delta_max_expected(const DemandTrace& trace, std::int64_t c,
                          double p_acc) {
  if (!(p_acc > 0.0) || p_acc > 1.0)
    throw Error("InvalidParams", "p_acc must be in (0, 1]");
  return deficit_at_rate(trace, static_cast<double>(c) * p_acc);
}

double effective_capacity_deficit(const DemandTrace& trace, std::int64_t c,
                                  double kappa) {
  if (kappa < 0.0 || kappa >= 1.0)
    throw Error("InvalidParams", "kappa must be in [0, 1)");
  return deficit_at_rate(trace, static_cast<double>(c) * (1.0 - kappa));
}

}  // namespace magicflow
