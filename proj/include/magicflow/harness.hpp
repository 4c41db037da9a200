#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "magicflow/delivery.hpp"
#include "magicflow/workload.hpp"

namespace magicflow {

enum class CapacityRegime { LowC, MidC, HighC };   // c in {1,2} / {3,4,5} / {6,7}
enum class BufferRegime { LowB, MidHighB };        // b in [0,5] / [6,15]

CapacityRegime capacity_regime(std::int64_t c);
BufferRegime buffer_regime(std::int64_t b);
const char* capacity_regime_name(CapacityRegime r);
const char* buffer_regime_name(BufferRegime r);

// One (family, seed, c, b, policy) evaluation row.
struct SweepRecord {
  Family family = Family::Medium;
  std::uint64_t seed = 0;
  std::int64_t c = 1, b = 0;
  Policy policy = Policy::Static;
  std::int64_t t_count = 0, t_depth = 0;
  std::optional<double> slack_ratio;
  std::int64_t t_static = 0;
  std::int64_t delta_max = 0;
  std::int64_t lower_bound = 0;
  bool finite = true;
  std::int64_t t_exe = 0;
  std::int64_t stall_cycles = 0;
  bool stalled = false;
  std::optional<double> slowdown;
  std::optional<std::int64_t> gap;
  std::optional<bool> inversion_vs_smooth;  // sigma_static rows only
  CapacityRegime cap_regime = CapacityRegime::LowC;
  BufferRegime buf_regime = BufferRegime::LowB;
  // Kept in memory for the gap post-hoc analysis; not serialized to CSV.
  std::vector<std::pair<std::int64_t, std::int64_t>> backlog_intervals;
};

struct SweepConfig {
  std::vector<FamilyParams> families;  // default: default_sweep_families()
  std::vector<std::int64_t> c_grid;    // default: 1..7
  std::vector<std::int64_t> b_grid;    // default: 0..15
  std::vector<Policy> policies;        // default: static, ca, smooth
  std::uint64_t master_seed = 0;       // added to each family seed
  int jobs = 1;

  static SweepConfig defaults();
};

// One record per (instance, c, b, policy) in canonical
// (family, seed, c, b, policy) order; deterministic in master_seed.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

// Result CSV, columns:
// family,seed,c,b,policy,t_count,t_depth,slack_ratio,t_static,delta_max,
// lower_bound,t_exe,stall_cycles,stalled,slowdown,gap,inversion_vs_smooth
// with t_exe = "inf" for infeasible rows and empty cells for undefined
// fields.
void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_records_csv(std::istream& in);

// Bound violations, predicted-vs-observed correlation, and gap statistics
// over finite rows, split by whether the backlog term is active.
// Throws NoFiniteRecords.
nlohmann::json bound_validation_report(const std::vector<SweepRecord>& records);

// Per-slice and pooled AUC / Spearman for the three predictors on the
// stall, slowdown and inversion tasks, paired bootstrap for the
// slack-vs-T-depth difference, and incremental R2 / AUC.
nlohmann::json predictor_eval(const std::vector<SweepRecord>& records);

// family x capacity-regime mean slowdown under sigma_static, finite rows;
// infeasible rows reported as counts.
nlohmann::json slowdown_table(const std::vector<SweepRecord>& records);

// Pooled within-subgroup stall AUC and slowdown |rho| per predictor.
nlohmann::json subgroup_stability(const std::vector<SweepRecord>& records);

// Rank-biserial effect sizes of delta_max, c and t_static for
// (gap > 0) vs (gap = 0) over finite rows, plus backlog-interval export.
// Throws NoPositiveGaps when no positive-gap rows exist.
nlohmann::json gap_posthoc(const std::vector<SweepRecord>& records);

// sigma_quota vs sigma_ca schedule lengths per workload and capacity;
// both policies are checked to be stall-free with delta_max <= 0.
nlohmann::json quota_probe(
    const std::vector<std::pair<std::string, CircuitDag>>& workloads,
    const std::vector<std::int64_t>& c_grid);

std::vector<std::pair<std::string, CircuitDag>> default_quota_probe_workloads();

}  // namespace magicflow
