#include <doctest.h>

#include <sstream>

#include "magicflow/harness.hpp"

using namespace magicflow;

namespace {

SweepConfig reduced_config() {
  SweepConfig cfg = SweepConfig::defaults();
  std::vector<FamilyParams> families;
  for (const auto& p : cfg.families)
    if (p.seed <= 2) families.push_back(p);  // 3 families x 2 seeds
  cfg.families = families;
  cfg.c_grid = {1, 2, 7};
  cfg.b_grid = {0, 3, 8};
  return cfg;
}

std::string csv_of(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  write_records_csv(out, records);
  return out.str();
}

}  // namespace

TEST_CASE("regime partitions") {
  CHECK(capacity_regime(1) == CapacityRegime::LowC);
  CHECK(capacity_regime(2) == CapacityRegime::LowC);
  CHECK(capacity_regime(3) == CapacityRegime::MidC);
  CHECK(capacity_regime(5) == CapacityRegime::MidC);
  CHECK(capacity_regime(6) == CapacityRegime::HighC);
  CHECK(capacity_regime(7) == CapacityRegime::HighC);
  CHECK(buffer_regime(0) == BufferRegime::LowB);
  CHECK(buffer_regime(5) == BufferRegime::LowB);
  CHECK(buffer_regime(6) == BufferRegime::MidHighB);
  CHECK(buffer_regime(15) == BufferRegime::MidHighB);
}

TEST_CASE("default config shape") {
  SweepConfig cfg = SweepConfig::defaults();
  CHECK(cfg.families.size() == 15);
  CHECK(cfg.c_grid.size() == 7);
  CHECK(cfg.b_grid.size() == 16);
  CHECK(cfg.policies.size() == 3);
  CHECK(cfg.families.size() * cfg.c_grid.size() * cfg.b_grid.size() *
            cfg.policies.size() ==
        5040);
}

TEST_CASE("reduced sweep: shape, order, invariants") {
  SweepConfig cfg = reduced_config();
  auto records = run_sweep(cfg);
  REQUIRE(records.size() == 6 * 3 * 3 * 3);

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    // Canonical ordering: policy fastest, then b, then c.
    if (i > 0) {
      const auto& prev = records[i - 1];
      bool same_slice = prev.family == r.family && prev.seed == r.seed &&
                        prev.c == r.c && prev.b == r.b;
      if (same_slice) CHECK(static_cast<int>(prev.policy) < static_cast<int>(r.policy));
    }
    CHECK(r.cap_regime == capacity_regime(r.c));
    CHECK(r.buf_regime == buffer_regime(r.b));
    if (r.finite) {
      CHECK(r.t_exe >= r.lower_bound);
      REQUIRE(r.gap.has_value());
      CHECK(*r.gap >= 0);
      CHECK(r.stalled == (r.stall_cycles > 0));
    } else {
      CHECK(!r.slowdown.has_value());
      CHECK(!r.gap.has_value());
    }
    if (r.policy == Policy::Static)
      CHECK(r.inversion_vs_smooth.has_value());
    else
      CHECK(!r.inversion_vs_smooth.has_value());
    if (r.policy == Policy::CapacityAware) {
      CHECK(r.delta_max <= 0);
      CHECK(r.stall_cycles == 0);
      CHECK(r.finite);
      CHECK(r.t_exe == r.t_static);
    }
  }
}

TEST_CASE("sweep is deterministic and job-count independent") {
  SweepConfig cfg = reduced_config();
  cfg.jobs = 1;
  auto serial = csv_of(run_sweep(cfg));
  cfg.jobs = 4;
  auto parallel = csv_of(run_sweep(cfg));
  CHECK(serial == parallel);

  cfg.master_seed = 17;
  CHECK(csv_of(run_sweep(cfg)) != serial);
}

TEST_CASE("records CSV round-trip") {
  SweepConfig cfg = reduced_config();
  auto records = run_sweep(cfg);
  std::string csv = csv_of(records);
  std::istringstream in(csv);
  auto back = read_records_csv(in);
  REQUIRE(back.size() == records.size());
  // backlog_intervals are not serialized; compare everything else via a
  // re-serialization pass.
  for (auto& r : back) r.backlog_intervals.clear();
  auto trimmed = records;
  for (auto& r : trimmed) r.backlog_intervals.clear();
  CHECK(csv_of(back) == csv_of(trimmed));

  std::size_t header_end = csv.find('\n');
  CHECK(csv.substr(0, header_end) ==
        "family,seed,c,b,policy,t_count,t_depth,slack_ratio,t_static,"
        "delta_max,lower_bound,t_exe,stall_cycles,stalled,slowdown,gap,"
        "inversion_vs_smooth");
}

TEST_CASE("reports run on a reduced sweep") {
  auto records = run_sweep(reduced_config());

  auto bound = bound_validation_report(records);
  CHECK(bound["violations"] == 0);
  std::size_t le = bound["by_subset"]["dmax_le_b"]["n"];
  std::size_t gt = bound["by_subset"]["dmax_gt_b"]["n"];
  CHECK(le + gt == bound["n"].get<std::size_t>());

  auto table = slowdown_table(records);
  for (const char* fam : {"high", "medium", "low"})
    for (const char* reg : {"low_c", "mid_c", "high_c"})
      CHECK(table[fam][reg].contains("mean_slowdown"));

  auto pred = predictor_eval(records);
  CHECK(pred.contains("pooled"));
  CHECK(pred["pooled"]["stall_auc"].contains("delta_max"));

  auto stability = subgroup_stability(records);
  CHECK(stability["rows"].size() == 8);

  CHECK_THROWS_AS(bound_validation_report({}), Error);
}

TEST_CASE("gap_posthoc reports NoPositiveGaps when supply dominates") {
  SweepConfig cfg = SweepConfig::defaults();
  std::vector<FamilyParams> low;
  for (const auto& p : cfg.families)
    if (p.family == Family::Low) low.push_back(p);
  cfg.families = low;
  cfg.c_grid = {7};
  cfg.b_grid = {15};
  auto records = run_sweep(cfg);
  CHECK_THROWS_AS(gap_posthoc(records), Error);
}

TEST_CASE("quota probe: zero gain on a zero-slack chain, clean execution") {
  auto probe = quota_probe(default_quota_probe_workloads(), {1, 2, 3});
  bool saw_chain = false;
  for (const auto& row : probe["rows"]) {
    CHECK(row["ca_stall_cycles"] == 0);
    CHECK(row["quota_stall_cycles"] == 0);
    CHECK(row["ca_delta_max"].get<std::int64_t>() <= 0);
    CHECK(row["quota_delta_max"].get<std::int64_t>() <= 0);
    // The slack/urgency ordering is only guaranteed not to lose at c=1;
    // at higher capacities a one-step loss is possible (and observed).
    if (row["c"] == 1) CHECK(row["gain"].get<std::int64_t>() >= 0);
    if (row["workload"] == "chain") {
      saw_chain = true;
      CHECK(row["gain"] == 0);
    }
  }
  CHECK(saw_chain);
}
