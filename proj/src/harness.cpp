#include "magicflow/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "magicflow/io.hpp"
#include "magicflow/stats.hpp"

namespace magicflow {

CapacityRegime capacity_regime(std::int64_t c) {
  if (c <= 2) return CapacityRegime::LowC;
  if (c <= 5) return CapacityRegime::MidC;
  return CapacityRegime::HighC;
}

BufferRegime buffer_regime(std::int64_t b) {
  return b <= 5 ? BufferRegime::LowB : BufferRegime::MidHighB;
}

const char* capacity_regime_name(CapacityRegime r) {
  switch (r) {
    case CapacityRegime::LowC: return "low_c";
    case CapacityRegime::MidC: return "mid_c";
    case CapacityRegime::HighC: return "high_c";
  }
  return "?";
}

const char* buffer_regime_name(BufferRegime r) {
  return r == BufferRegime::LowB ? "low_b" : "mid_high_b";
}

SweepConfig SweepConfig::defaults() {
  SweepConfig cfg;
  cfg.families = default_sweep_families();
  for (std::int64_t c = 1; c <= 7; ++c) cfg.c_grid.push_back(c);
  for (std::int64_t b = 0; b <= 15; ++b) cfg.b_grid.push_back(b);
  cfg.policies = {Policy::Static, Policy::CapacityAware, Policy::Smooth};
  return cfg;
}

namespace {

std::vector<SweepRecord> sweep_instance(const SweepConfig& cfg,
                                        const FamilyParams& base) {
  FamilyParams fp = base;
  fp.seed = base.seed + cfg.master_seed;
  CircuitDag dag = generate(fp);
  DagView view = DagView::build(dag);
  SlackAnalysis sa = slack_analysis(view);

  SweepRecord proto;
  proto.family = fp.family;
  proto.seed = fp.seed;
  proto.t_count = t_count(dag);
  proto.t_depth = t_depth(view);
  proto.slack_ratio = sa.slack_ratio;

  Schedule sched_static = schedule_static(view);
  Schedule sched_smooth = schedule_smooth(view);
  DemandTrace trace_static = demand_trace(view, sched_static);
  DemandTrace trace_smooth = demand_trace(view, sched_smooth);

  bool want_ca = false, want_quota = false;
  for (Policy p : cfg.policies) {
    want_ca |= p == Policy::CapacityAware;
    want_quota |= p == Policy::Quota;
  }

  std::vector<SweepRecord> records;
  for (std::int64_t c : cfg.c_grid) {
    DemandTrace trace_ca, trace_quota;
    if (want_ca) trace_ca = demand_trace(view, schedule_capacity_aware(view, c));
    if (want_quota) trace_quota = demand_trace(view, schedule_quota(view, c));
    for (std::int64_t b : cfg.b_grid) {
      DeliveryParams params{c, b};
      ExecResult res_static = simulate(trace_static, params);
      ExecResult res_smooth = simulate(trace_smooth, params);
      for (Policy p : cfg.policies) {
        const ExecResult* res = nullptr;
        ExecResult res_local;
        switch (p) {
          case Policy::Static: res = &res_static; break;
          case Policy::Smooth: res = &res_smooth; break;
          case Policy::CapacityAware:
            res_local = simulate(trace_ca, params);
            res = &res_local;
            break;
          case Policy::Quota:
            res_local = simulate(trace_quota, params);
            res = &res_local;
            break;
        }
        SweepRecord rec = proto;
        rec.c = c;
        rec.b = b;
        rec.policy = p;
        rec.t_static = res->t_static;
        rec.delta_max = res->delta_max;
        rec.lower_bound = res->lower_bound;
        rec.finite = res->finite;
        rec.t_exe = res->t_exe;
        rec.stall_cycles = res->stall_cycles;
        rec.stalled = res->stalled;
        rec.slowdown = res->slowdown;
        if (res->finite) rec.gap = res->t_exe - res->lower_bound;
        if (p == Policy::Static)
          rec.inversion_vs_smooth = detect_inversion(res_static, res_smooth);
        rec.cap_regime = capacity_regime(c);
        rec.buf_regime = buffer_regime(b);
        rec.backlog_intervals = res->backlog_intervals;
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  std::vector<std::future<std::vector<SweepRecord>>> futures;
  int jobs = std::max(1, cfg.jobs);
  futures.reserve(cfg.families.size());
  for (const FamilyParams& fp : cfg.families) {
    auto policy = jobs > 1 ? std::launch::async : std::launch::deferred;
    futures.push_back(std::async(policy, sweep_instance, std::cref(cfg), fp));
  }
  std::vector<SweepRecord> all;
  for (auto& f : futures) {
    std::vector<SweepRecord> part = f.get();  // canonical instance order
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

void write_records_csv(std::ostream& out,
                       const std::vector<SweepRecord>& records) {
  out << "family,seed,c,b,policy,t_count,t_depth,slack_ratio,t_static,"
         "delta_max,lower_bound,t_exe,stall_cycles,stalled,slowdown,gap,"
         "inversion_vs_smooth\n";
  for (const auto& r : records) {
    out << family_name(r.family) << ',' << r.seed << ',' << r.c << ',' << r.b
        << ',' << policy_name(r.policy) << ',' << r.t_count << ',' << r.t_depth
        << ',';
    if (r.slack_ratio) out << format_double(*r.slack_ratio);
    out << ',' << r.t_static << ',' << r.delta_max << ',' << r.lower_bound
        << ',';
    if (r.finite)
      out << r.t_exe;
    else
      out << "inf";
    out << ',' << r.stall_cycles << ',' << (r.stalled ? 1 : 0) << ',';
    if (r.slowdown) out << format_double(*r.slowdown);
    out << ',';
    if (r.gap) out << *r.gap;
    out << ',';
    if (r.inversion_vs_smooth) out << (*r.inversion_vs_smooth ? 1 : 0);
    out << '\n';
  }
}

std::vector<SweepRecord> read_records_csv(std::istream& in) {
  std::vector<SweepRecord> records;
  std::string line;
  if (!std::getline(in, line)) throw Error("ParseError", "empty CSV");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    while (cells.size() < 17) cells.emplace_back();
    if (cells.size() != 17)
      throw Error("ParseError",
                  "line " + std::to_string(lineno) + ": bad column count");
    SweepRecord r;
    auto family = family_from_name(cells[0]);
    auto policy = policy_from_name(cells[4]);
    if (!family || !policy)
      throw Error("ParseError",
                  "line " + std::to_string(lineno) + ": bad family/policy");
    r.family = *family;
    r.policy = *policy;
    r.seed = std::stoull(cells[1]);
    r.c = std::stoll(cells[2]);
    r.b = std::stoll(cells[3]);
    r.t_count = std::stoll(cells[5]);
    r.t_depth = std::stoll(cells[6]);
    if (!cells[7].empty()) r.slack_ratio = std::stod(cells[7]);
    r.t_static = std::stoll(cells[8]);
    r.delta_max = std::stoll(cells[9]);
    r.lower_bound = std::stoll(cells[10]);
    if (cells[11] == "inf") {
      r.finite = false;
    } else {
      r.finite = true;
      r.t_exe = std::stoll(cells[11]);
    }
    r.stall_cycles = std::stoll(cells[12]);
    r.stalled = cells[13] == "1";
    if (!cells[14].empty()) r.slowdown = std::stod(cells[14]);
    if (!cells[15].empty()) r.gap = std::stoll(cells[15]);
    if (!cells[16].empty()) r.inversion_vs_smooth = cells[16] == "1";
    r.cap_regime = capacity_regime(r.c);
    r.buf_regime = buffer_regime(r.b);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

struct TaskScore {
  double value = 0.0;
  bool informative = false;
};

TaskScore safe_auc(const std::vector<double>& scores,
                   const std::vector<bool>& labels) {
  try {
    return {auc({scores, labels}), true};
  } catch (const Error&) {
    return {0.5, false};  // one-class slice: non-informative by convention
  }
}

TaskScore safe_abs_spearman(const std::vector<double>& x,
                            const std::vector<double>& y) {
  try {
    return {std::abs(spearman(x, y)), true};
  } catch (const Error&) {
    return {0.0, false};
  }
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0
                   : std::accumulate(v.begin(), v.end(), 0.0) /
                         static_cast<double>(v.size());
}

nlohmann::json gap_stats(const std::vector<const SweepRecord*>& rows) {
  std::vector<double> gaps, lbs, exes;
  for (const auto* r : rows) {
    gaps.push_back(static_cast<double>(*r->gap));
    lbs.push_back(static_cast<double>(r->lower_bound));
    exes.push_back(static_cast<double>(r->t_exe));
  }
  std::size_t within1 = 0;
  for (double g : gaps)
    if (g <= 1.0) ++within1;
  nlohmann::json j;
  j["n"] = rows.size();
  j["mean_gap"] = mean_of(gaps);
  j["median_gap"] = median_of(gaps);
  j["frac_within_1"] =
      rows.empty() ? 0.0 : static_cast<double>(within1) / rows.size();
  try {
    j["pearson_pred_obs"] = pearson(lbs, exes);
  } catch (const Error&) {
    j["pearson_pred_obs"] = nullptr;
  }
  return j;
}

// The three predictors, oriented so that larger score = higher risk.
// t_depth enters negated: at fixed T-count, a smaller T-depth means
// denser bursts.
struct PredictorColumns {
  std::vector<double> delta_max, slack, neg_t_depth;
  std::vector<bool> label;
  std::vector<double> target;  // slowdown regression
};

}  // namespace

nlohmann::json bound_validation_report(
    const std::vector<SweepRecord>& records) {
  std::vector<const SweepRecord*> finite, le_b, gt_b;
  std::size_t violations = 0;
  for (const auto& r : records) {
    if (!r.finite) continue;
    finite.push_back(&r);
    if (r.t_exe < r.lower_bound) ++violations;
    (r.delta_max <= r.b ? le_b : gt_b).push_back(&r);
  }
  if (finite.empty()) throw Error("NoFiniteRecords", "no finite records");
  nlohmann::json j = gap_stats(finite);
  j["violations"] = violations;
  j["by_subset"]["dmax_le_b"] = gap_stats(le_b);
  j["by_subset"]["dmax_gt_b"] = gap_stats(gt_b);
  return j;
}

nlohmann::json slowdown_table(const std::vector<SweepRecord>& records) {
  nlohmann::json table;
  for (Family fam : {Family::High, Family::Medium, Family::Low}) {
    for (CapacityRegime reg :
         {CapacityRegime::LowC, CapacityRegime::MidC, CapacityRegime::HighC}) {
      std::vector<double> slowdowns;
      std::size_t infeasible = 0;
      for (const auto& r : records) {
        if (r.policy != Policy::Static || r.family != fam ||
            r.cap_regime != reg)
          continue;
        if (!r.finite) {
          ++infeasible;
          continue;
        }
        if (r.slowdown) slowdowns.push_back(*r.slowdown);
      }
      auto& cell = table[family_name(fam)][capacity_regime_name(reg)];
      cell["mean_slowdown"] =
          slowdowns.empty() ? nlohmann::json(nullptr)
                            : nlohmann::json(mean_of(slowdowns));
      cell["n_finite"] = slowdowns.size();
      cell["n_infeasible"] = infeasible;
    }
  }
  return table;
}

namespace {

PredictorColumns collect_stall_columns(
    const std::vector<const SweepRecord*>& rows) {
  PredictorColumns cols;
  for (const auto* r : rows) {
    if (!r->finite || !r->slack_ratio) continue;
    cols.delta_max.push_back(static_cast<double>(r->delta_max));
    cols.slack.push_back(*r->slack_ratio);
    cols.neg_t_depth.push_back(-static_cast<double>(r->t_depth));
    cols.label.push_back(r->stalled);
    if (r->slowdown) cols.target.push_back(*r->slowdown);
  }
  return cols;
}

nlohmann::json predictor_triple(const PredictorColumns& cols) {
  nlohmann::json j;
  TaskScore d = safe_auc(cols.delta_max, cols.label);
  TaskScore s = safe_auc(cols.slack, cols.label);
  TaskScore t = safe_auc(cols.neg_t_depth, cols.label);
  j["delta_max"] = d.value;
  j["slack_ratio"] = s.value;
  j["t_depth"] = t.value;
  j["informative"] = d.informative;
  return j;
}

}  // namespace

nlohmann::json predictor_eval(const std::vector<SweepRecord>& records) {
  std::vector<const SweepRecord*> static_rows;
  for (const auto& r : records)
    if (r.policy == Policy::Static && r.slack_ratio) static_rows.push_back(&r);

  std::map<std::pair<std::int64_t, std::int64_t>,
           std::vector<const SweepRecord*>>
      slices;
  for (const auto* r : static_rows) slices[{r->c, r->b}].push_back(r);

  nlohmann::json per_slice = nlohmann::json::array();
  std::vector<double> stall_diffs, inv_diffs, slow_diffs;
  for (const auto& [key, rows] : slices) {
    nlohmann::json s;
    s["c"] = key.first;
    s["b"] = key.second;

    // Stall classification (finite rows).
    PredictorColumns stall = collect_stall_columns(rows);
    TaskScore auc_d = safe_auc(stall.delta_max, stall.label);
    TaskScore auc_s = safe_auc(stall.slack, stall.label);
    TaskScore auc_t = safe_auc(stall.neg_t_depth, stall.label);
    s["stall_auc"] = {{"delta_max", auc_d.value},
                      {"slack_ratio", auc_s.value},
                      {"t_depth", auc_t.value},
                      {"informative", auc_d.informative}};
    if (auc_d.informative) stall_diffs.push_back(auc_s.value - auc_t.value);

    // Slowdown regression (finite rows).
    std::vector<double> dm, sl, td, target;
    for (const auto* r : rows) {
      if (!r->finite || !r->slowdown) continue;
      dm.push_back(static_cast<double>(r->delta_max));
      sl.push_back(*r->slack_ratio);
      td.push_back(-static_cast<double>(r->t_depth));
      target.push_back(*r->slowdown);
    }
    TaskScore rho_d = safe_abs_spearman(dm, target);
    TaskScore rho_s = safe_abs_spearman(sl, target);
    TaskScore rho_t = safe_abs_spearman(td, target);
    s["slowdown_rho"] = {{"delta_max", rho_d.value},
                         {"slack_ratio", rho_s.value},
                         {"t_depth", rho_t.value},
                         {"informative", rho_d.informative}};
    if (rho_d.informative && rho_s.informative && rho_t.informative)
      slow_diffs.push_back(rho_s.value - rho_t.value);

    // Inversion classification (all rows; INFEASIBLE orders above finite).
    std::vector<double> idm, isl, itd;
    std::vector<bool> ilabel;
    for (const auto* r : rows) {
      if (!r->inversion_vs_smooth) continue;
      idm.push_back(static_cast<double>(r->delta_max));
      isl.push_back(*r->slack_ratio);
      itd.push_back(-static_cast<double>(r->t_depth));
      ilabel.push_back(*r->inversion_vs_smooth);
    }
    TaskScore iauc_d = safe_auc(idm, ilabel);
    TaskScore iauc_s = safe_auc(isl, ilabel);
    TaskScore iauc_t = safe_auc(itd, ilabel);
    s["inversion_auc"] = {{"delta_max", iauc_d.value},
                          {"slack_ratio", iauc_s.value},
                          {"t_depth", iauc_t.value},
                          {"informative", iauc_d.informative}};
    if (iauc_d.informative) inv_diffs.push_back(iauc_s.value - iauc_t.value);

    per_slice.push_back(std::move(s));
  }

  nlohmann::json j;
  j["per_slice"] = std::move(per_slice);

  // Pooled metrics.
  PredictorColumns pooled = collect_stall_columns(static_rows);
  j["pooled"]["stall_auc"] = predictor_triple(pooled);
  {
    std::vector<double> dm, sl, td, target;
    for (const auto* r : static_rows) {
      if (!r->finite || !r->slowdown) continue;
      dm.push_back(static_cast<double>(r->delta_max));
      sl.push_back(*r->slack_ratio);
      td.push_back(-static_cast<double>(r->t_depth));
      target.push_back(*r->slowdown);
    }
    j["pooled"]["slowdown_rho"] = {
        {"delta_max", safe_abs_spearman(dm, target).value},
        {"slack_ratio", safe_abs_spearman(sl, target).value},
        {"t_depth", safe_abs_spearman(td, target).value}};
    std::vector<double> idm, isl, itd;
    std::vector<bool> ilabel;
    for (const auto* r : static_rows) {
      if (!r->inversion_vs_smooth) continue;
      idm.push_back(static_cast<double>(r->delta_max));
      isl.push_back(*r->slack_ratio);
      itd.push_back(-static_cast<double>(r->t_depth));
      ilabel.push_back(*r->inversion_vs_smooth);
    }
    j["pooled"]["inversion_auc"] = {
        {"delta_max", safe_auc(idm, ilabel).value},
        {"slack_ratio", safe_auc(isl, ilabel).value},
        {"t_depth", safe_auc(itd, ilabel).value}};
  }

  // Paired bootstrap over slices, 10,000 resamples.
  auto boot = [](const std::vector<double>& diffs) -> nlohmann::json {
    if (diffs.empty()) return nullptr;
    BootstrapCi ci = paired_bootstrap_mean_ci(diffs, 10000, 20240901);
    return {{"mean", ci.mean}, {"lo95", ci.lo95}, {"hi95", ci.hi95},
            {"n_slices", diffs.size()}};
  };
  j["bootstrap_slack_vs_tdepth"]["stall"] = boot(stall_diffs);
  j["bootstrap_slack_vs_tdepth"]["inversion"] = boot(inv_diffs);
  j["bootstrap_slack_vs_tdepth"]["slowdown"] = boot(slow_diffs);

  // Incremental feature value, pooled finite sigma_static rows.
  {
    std::vector<double> td, sl, dm, slowdown;
    std::vector<bool> stalled;
    for (const auto* r : static_rows) {
      if (!r->finite || !r->slowdown) continue;
      td.push_back(static_cast<double>(r->t_depth));
      sl.push_back(*r->slack_ratio);
      dm.push_back(static_cast<double>(r->delta_max));
      slowdown.push_back(*r->slowdown);
      stalled.push_back(r->stalled);
    }
    nlohmann::json inc;
    try {
      inc["r2_slowdown"] = {
          {"t_depth", ols_r2({td}, slowdown)},
          {"plus_slack", ols_r2({td, sl}, slowdown)},
          {"plus_delta_max", ols_r2({td, sl, dm}, slowdown)}};
      std::vector<double> label01(stalled.size());
      for (std::size_t i = 0; i < stalled.size(); ++i)
        label01[i] = stalled[i] ? 1.0 : 0.0;
      inc["auc_stall"] = {
          {"t_depth", safe_auc(ols_fitted({td}, label01), stalled).value},
          {"plus_slack",
           safe_auc(ols_fitted({td, sl}, label01), stalled).value},
          {"plus_delta_max",
           safe_auc(ols_fitted({td, sl, dm}, label01), stalled).value}};
    } catch (const Error& e) {
      inc["error"] = e.what();
    }
    j["incremental"] = std::move(inc);
  }
  return j;
}

nlohmann::json subgroup_stability(const std::vector<SweepRecord>& records) {
  std::vector<const SweepRecord*> static_rows;
  for (const auto& r : records)
    if (r.policy == Policy::Static && r.slack_ratio) static_rows.push_back(&r);

  struct Subset {
    std::string group, name;
    std::function<bool(const SweepRecord&)> pred;
  };
  std::vector<Subset> subsets;
  for (Family f : {Family::High, Family::Medium, Family::Low})
    subsets.push_back({"family", family_name(f),
                       [f](const SweepRecord& r) { return r.family == f; }});
  for (CapacityRegime reg :
       {CapacityRegime::LowC, CapacityRegime::MidC, CapacityRegime::HighC})
    subsets.push_back({"capacity", capacity_regime_name(reg),
                       [reg](const SweepRecord& r) { return r.cap_regime == reg; }});
  for (BufferRegime reg : {BufferRegime::LowB, BufferRegime::MidHighB})
    subsets.push_back({"buffer", buffer_regime_name(reg),
                       [reg](const SweepRecord& r) { return r.buf_regime == reg; }});

  nlohmann::json rows = nlohmann::json::array();
  std::size_t cells = 0, delta_best_cells = 0;
  for (const auto& subset : subsets) {
    std::vector<const SweepRecord*> members;
    for (const auto* r : static_rows)
      if (subset.pred(*r)) members.push_back(r);
    PredictorColumns stall = collect_stall_columns(members);
    TaskScore auc_d = safe_auc(stall.delta_max, stall.label);
    TaskScore auc_s = safe_auc(stall.slack, stall.label);
    TaskScore auc_t = safe_auc(stall.neg_t_depth, stall.label);

    std::vector<double> dm, sl, td, target;
    for (const auto* r : members) {
      if (!r->finite || !r->slowdown) continue;
      dm.push_back(static_cast<double>(r->delta_max));
      sl.push_back(*r->slack_ratio);
      td.push_back(-static_cast<double>(r->t_depth));
      target.push_back(*r->slowdown);
    }
    TaskScore rho_d = safe_abs_spearman(dm, target);
    TaskScore rho_s = safe_abs_spearman(sl, target);
    TaskScore rho_t = safe_abs_spearman(td, target);

    nlohmann::json row;
    row["group"] = subset.group;
    row["subset"] = subset.name;
    row["n"] = members.size();
    row["stall_auc"] = {{"delta_max", auc_d.value},
                        {"slack_ratio", auc_s.value},
                        {"t_depth", auc_t.value},
                        {"informative", auc_d.informative}};
    row["slowdown_rho"] = {{"delta_max", rho_d.value},
                           {"slack_ratio", rho_s.value},
                           {"t_depth", rho_t.value},
                           {"informative", rho_d.informative}};
    const double eps = 1e-12;
    if (auc_d.informative) {
      ++cells;
      if (auc_d.value + eps >= std::max(auc_s.value, auc_t.value))
        ++delta_best_cells;
      row["delta_max_best_stall"] =
          auc_d.value + eps >= std::max(auc_s.value, auc_t.value);
    }
    if (rho_d.informative) {
      ++cells;
      if (rho_d.value + eps >= std::max(rho_s.value, rho_t.value))
        ++delta_best_cells;
      row["delta_max_best_slowdown"] =
          rho_d.value + eps >= std::max(rho_s.value, rho_t.value);
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json j;
  j["rows"] = std::move(rows);
  j["summary"] = {
      {"nondegenerate_cells", cells},
      {"delta_max_best_cells", delta_best_cells},
      {"delta_max_best_frac",
       cells == 0 ? 0.0
                  : static_cast<double>(delta_best_cells) /
                        static_cast<double>(cells)}};
  return j;
}

nlohmann::json gap_posthoc(const std::vector<SweepRecord>& records) {
  std::vector<const SweepRecord*> positive, zero;
  for (const auto& r : records) {
    if (!r.finite || !r.gap) continue;
    (*r.gap > 0 ? positive : zero).push_back(&r);
  }
  if (positive.empty())
    throw Error("NoPositiveGaps", "no finite records with gap > 0");

  auto effect = [&](auto getter) {
    std::vector<double> a, b;
    for (const auto* r : positive) a.push_back(getter(*r));
    for (const auto* r : zero) b.push_back(getter(*r));
    return mann_whitney_rank_biserial(a, b);
  };
  nlohmann::json j;
  j["n_positive"] = positive.size();
  j["n_zero"] = zero.size();
  j["effect_size"] = {
      {"delta_max",
       effect([](const SweepRecord& r) { return static_cast<double>(r.delta_max); })},
      {"c", effect([](const SweepRecord& r) { return static_cast<double>(r.c); })},
      {"t_static",
       effect([](const SweepRecord& r) { return static_cast<double>(r.t_static); })}};

  // Backlog-active intervals of positive-gap rows (figure-analog export).
  nlohmann::json cases = nlohmann::json::array();
  std::size_t multi_step = 0, gap_gt_1 = 0;
  bool have_intervals = false;
  for (const auto* r : positive) {
    if (!r->backlog_intervals.empty()) have_intervals = true;
    std::int64_t span = 0;
    for (const auto& [s, e] : r->backlog_intervals)
      span = std::max(span, e - s + 1);
    if (*r->gap > 1) {
      ++gap_gt_1;
      if (span >= 2) ++multi_step;
    }
    if (cases.size() < 50) {
      nlohmann::json item;
      item["family"] = family_name(r->family);
      item["seed"] = r->seed;
      item["c"] = r->c;
      item["b"] = r->b;
      item["policy"] = policy_name(r->policy);
      item["gap"] = *r->gap;
      item["backlog_intervals"] = r->backlog_intervals;
      cases.push_back(std::move(item));
    }
  }
  j["positive_gap_cases"] = std::move(cases);
  if (have_intervals) {
    j["gap_gt_1_count"] = gap_gt_1;
    j["gap_gt_1_multi_step_backlog"] = multi_step;
  }
  return j;
}

nlohmann::json quota_probe(
    const std::vector<std::pair<std::string, CircuitDag>>& workloads,
    const std::vector<std::int64_t>& c_grid) {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t settings = 0, positive = 0;
  for (const auto& [name, dag] : workloads) {
    DagView view = DagView::build(dag);
    for (std::int64_t c : c_grid) {
      Schedule ca = schedule_capacity_aware(view, c);
      Schedule quota = schedule_quota(view, c);
      DemandTrace trace_ca = demand_trace(view, ca);
      DemandTrace trace_quota = demand_trace(view, quota);
      ExecResult res_ca = simulate(trace_ca, {c, 0});
      ExecResult res_quota = simulate(trace_quota, {c, 0});
      nlohmann::json row;
      row["workload"] = name;
      row["c"] = c;
      row["ca_len"] = ca.t_static;
      row["quota_len"] = quota.t_static;
      row["gain"] = ca.t_static - quota.t_static;
      row["ca_delta_max"] = res_ca.delta_max;
      row["quota_delta_max"] = res_quota.delta_max;
      row["ca_stall_cycles"] = res_ca.stall_cycles;
      row["quota_stall_cycles"] = res_quota.stall_cycles;
      rows.push_back(std::move(row));
      ++settings;
      if (ca.t_static > quota.t_static) ++positive;
    }
  }
  nlohmann::json j;
  j["rows"] = std::move(rows);
  j["positive_rate"] =
      settings == 0 ? 0.0
                    : static_cast<double>(positive) / static_cast<double>(settings);
  return j;
}

std::vector<std::pair<std::string, CircuitDag>> default_quota_probe_workloads() {
  std::vector<std::pair<std::string, CircuitDag>> out;
  out.emplace_back("chain", generate(default_params(Family::Low, 1)));
  out.emplace_back("high_s1", generate(default_params(Family::High, 1)));
  out.emplace_back("high_s2", generate(default_params(Family::High, 2)));
  out.emplace_back("medium_s1", generate(default_params(Family::Medium, 1)));
  out.emplace_back("medium_s2", generate(default_params(Family::Medium, 2)));
  return out;
}

}  // namespace magicflow
