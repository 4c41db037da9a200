#pragma once

#include <cstdint>
#include <vector>

#include "magicflow/delivery.hpp"

namespace magicflow {

// Bernoulli-thinned supply: each of the c per-cycle production attempts
// succeeds independently with probability p_acc.
struct StochasticParams {
  double p_acc = 1.0;
  std::uint64_t seed = 0;
  int replications = 1;
  std::int64_t cycle_cap = 0;  // 0 = default 50 * lower_bound + 1000
};

// One ExecResult per replication; replication r uses seed + r. With
// p_acc = 1.0 every replication is identical to the deterministic
// simulate(). A replication that exceeds the cycle cap is returned with
// finite = false and cycle_capped = true.
std::vector<ExecResult> simulate_stochastic(const DemandTrace& trace,
                                            DeliveryParams params,
                                            const StochasticParams& sp);

// max_t (A(t) - c * p_acc * t): delta_max against the expected service
// rate. Equals delta_max exactly at p_acc = 1.
double delta_max_expected(const DemandTrace& trace, std::int64_t c,
                          double p_acc);

// Deficit against an effective capacity c * (1 - kappa), the first-order
// route-overhead proxy. kappa in [0, 1).
double effective_capacity_deficit(const DemandTrace& trace, std::int64_t c,
                                  double kappa);

}  // namespace magicflow
