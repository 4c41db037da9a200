// Command-line front end: workload generation, scheduling, bounded-delivery
// simulation, the full sweep harness, trace ingestion, and report
// regeneration from a records CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "magicflow/delivery.hpp"
#include "magicflow/harness.hpp"
#include "magicflow/io.hpp"
#include "magicflow/sensitivity.hpp"

namespace mf = magicflow;
using nlohmann::json;

namespace {

json exec_result_to_json(const mf::ExecResult& r) {
  json j;
  j["c"] = r.params.c;
  j["b"] = r.params.b;
  j["t_static"] = r.t_static;
  j["t_exe"] = r.finite ? json(r.t_exe) : json("inf");
  j["stall_cycles"] = r.stall_cycles;
  j["stalled"] = r.stalled;
  j["delta_max"] = r.delta_max;
  j["lower_bound"] = r.lower_bound;
  j["backlog_intervals"] = r.backlog_intervals;
  j["slowdown"] = r.slowdown ? json(*r.slowdown) : json(nullptr);
  if (r.cycle_capped) j["cycle_capped"] = true;
  return j;
}

void echo_config(const json& resolved) {
  std::cerr << "resolved config: " << resolved.dump() << "\n";
}

std::uint64_t env_master_seed(std::uint64_t fallback) {
  const char* env = std::getenv("MAGICFLOW_SEED");
  return env ? std::strtoull(env, nullptr, 10) : fallback;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    mf::write_json_file(out_path, j);
}

int cmd_generate(const std::string& family_name_str,
                 std::optional<std::int64_t> layers,
                 std::optional<std::int64_t> width,
                 std::optional<double> t_fraction,
                 std::optional<double> density, std::uint64_t seed,
                 const std::string& out) {
  auto family = mf::family_from_name(family_name_str);
  if (!family) throw mf::Error("InvalidParams", "unknown family " + family_name_str);
  mf::FamilyParams params = mf::default_params(*family, seed);
  if (layers) params.layers = *layers;
  if (width) params.width = *width;
  if (t_fraction) params.t_fraction = *t_fraction;
  if (density) params.edge_density = *density;
  echo_config({{"subcommand", "generate"},
               {"family", family_name_str},
               {"layers", params.layers},
               {"width", params.width},
               {"t_fraction", params.t_fraction},
               {"edge_density", params.edge_density},
               {"seed", params.seed},
               {"out", out}});
  emit(mf::dag_to_json(mf::generate(params)), out);
  return 0;
}

int cmd_schedule(const std::string& dag_path, const std::string& policy_str,
                 std::optional<std::int64_t> c, const std::string& out,
                 const std::string& trace_out) {
  auto policy = mf::policy_from_name(policy_str);
  if (!policy) throw mf::Error("InvalidParams", "unknown policy " + policy_str);
  bool needs_c = *policy == mf::Policy::CapacityAware ||
                 *policy == mf::Policy::Quota;
  if (needs_c && !c)
    throw mf::Error("InvalidParams", "--c is required for policy " + policy_str);
  mf::CircuitDag dag = mf::read_dag_file(dag_path);
  mf::DagView view = mf::DagView::build(dag);
  mf::Schedule sched;
  switch (*policy) {
    case mf::Policy::Static: sched = mf::schedule_static(view); break;
    case mf::Policy::CapacityAware:
      sched = mf::schedule_capacity_aware(view, *c);
      break;
    case mf::Policy::Smooth: sched = mf::schedule_smooth(view); break;
    case mf::Policy::Quota: sched = mf::schedule_quota(view, *c); break;
  }
  echo_config({{"subcommand", "schedule"},
               {"dag", dag_path},
               {"policy", policy_str},
               {"c", c ? json(*c) : json(nullptr)}});
  emit(mf::schedule_to_json(view, sched), out);
  if (!trace_out.empty()) {
    std::ofstream tf(trace_out);
    if (!tf) throw mf::Error("IoError", "cannot open " + trace_out);
    mf::write_trace(tf, mf::demand_trace(view, sched));
  }
  return 0;
}

int cmd_simulate(const std::string& trace_path, std::int64_t c, std::int64_t b,
                 std::optional<double> p_acc, int replications,
                 std::uint64_t seed, std::int64_t cycle_cap,
                 std::optional<double> kappa, const std::string& out) {
  mf::DemandTrace trace = mf::read_trace_file(trace_path);
  mf::DeliveryParams params{c, b};
  echo_config({{"subcommand", "simulate"},
               {"trace", trace_path},
               {"c", c},
               {"b", b},
               {"p_acc", p_acc ? json(*p_acc) : json(nullptr)},
               {"replications", replications},
               {"seed", seed},
               {"kappa", kappa ? json(*kappa) : json(nullptr)}});
  json j;
  if (p_acc && *p_acc < 1.0) {
    mf::StochasticParams sp{*p_acc, seed, replications, cycle_cap};
    auto runs = mf::simulate_stochastic(trace, params, sp);
    json arr = json::array();
    double slow_sum = 0.0;
    int slow_n = 0;
    for (const auto& r : runs) {
      arr.push_back(exec_result_to_json(r));
      if (r.slowdown) {
        slow_sum += *r.slowdown;
        ++slow_n;
      }
    }
    j["replications"] = std::move(arr);
    j["mean_slowdown"] = slow_n ? json(slow_sum / slow_n) : json(nullptr);
    j["delta_max_expected"] = mf::delta_max_expected(trace, c, *p_acc);
  } else {
    j = exec_result_to_json(mf::simulate(trace, params));
  }
  if (kappa)
    j["effective_capacity_deficit"] =
        mf::effective_capacity_deficit(trace, c, *kappa);
  emit(j, out);
  return 0;
}

int cmd_ingest(const std::string& trace_path, std::optional<std::int64_t> c,
               std::int64_t bin, const std::string& out) {
  mf::DemandTrace trace = mf::read_trace_file(trace_path);
  echo_config({{"subcommand", "ingest"}, {"trace", trace_path}, {"bin", bin}});
  json j;
  std::int64_t total = 0, peak = 0;
  for (std::int64_t d : trace.demands) {
    total += d;
    peak = std::max(peak, d);
  }
  j["length"] = trace.demands.size();
  j["t_count"] = total;
  j["peak_demand"] = peak;
  if (c) j["delta_max"] = mf::delta_max(trace, *c);
  if (bin > 0) {
    json bins = json::array();
    for (std::size_t i = 0; i < trace.demands.size();
         i += static_cast<std::size_t>(bin)) {
      std::int64_t m = 0;
      for (std::size_t k = i;
           k < trace.demands.size() && k < i + static_cast<std::size_t>(bin);
           ++k)
        m = std::max(m, trace.demands[k]);
      bins.push_back(m);
    }
    j["binned_peak_demand"] = std::move(bins);
  }
  emit(j, out);
  return 0;
}

void write_reports(const std::vector<mf::SweepRecord>& records,
                   const std::filesystem::path& dir, bool with_quota_probe,
                   const std::vector<std::int64_t>& probe_c_grid) {
  auto guard = [&](const char* name, auto fn) {
    json j;
    try {
      j = fn();
    } catch (const mf::Error& e) {
      j = {{"error", e.kind()}, {"message", e.what()}};
    }
    mf::write_json_file((dir / name).string(), j);
  };
  guard("bound_validation.json",
        [&] { return mf::bound_validation_report(records); });
  guard("predictors.json", [&] { return mf::predictor_eval(records); });
  guard("slowdown_table.json", [&] { return mf::slowdown_table(records); });
  guard("subgroup_stability.json",
        [&] { return mf::subgroup_stability(records); });
  guard("gap_posthoc.json", [&] { return mf::gap_posthoc(records); });
  if (with_quota_probe)
    guard("quota_probe.json", [&] {
      return mf::quota_probe(mf::default_quota_probe_workloads(), probe_c_grid);
    });
}

int cmd_sweep(const std::string& out_dir, std::uint64_t master_seed, int jobs,
              std::int64_t c_min, std::int64_t c_max, std::int64_t b_min,
              std::int64_t b_max, const std::vector<std::string>& policy_names,
              bool with_quota_probe, const std::string& config_path) {
  mf::SweepConfig cfg = mf::SweepConfig::defaults();
  cfg.master_seed = env_master_seed(master_seed);
  cfg.jobs = jobs;
  if (!config_path.empty()) {
    json file_cfg = mf::read_json_file(config_path);
    if (file_cfg.contains("master_seed"))
      cfg.master_seed = file_cfg["master_seed"].get<std::uint64_t>();
    if (file_cfg.contains("c_min")) c_min = file_cfg["c_min"].get<std::int64_t>();
    if (file_cfg.contains("c_max")) c_max = file_cfg["c_max"].get<std::int64_t>();
    if (file_cfg.contains("b_min")) b_min = file_cfg["b_min"].get<std::int64_t>();
    if (file_cfg.contains("b_max")) b_max = file_cfg["b_max"].get<std::int64_t>();
    if (file_cfg.contains("jobs")) cfg.jobs = file_cfg["jobs"].get<int>();
  }
  cfg.c_grid.clear();
  for (std::int64_t c = c_min; c <= c_max; ++c) cfg.c_grid.push_back(c);
  cfg.b_grid.clear();
  for (std::int64_t b = b_min; b <= b_max; ++b) cfg.b_grid.push_back(b);
  if (!policy_names.empty()) {
    cfg.policies.clear();
    for (const auto& name : policy_names) {
      auto p = mf::policy_from_name(name);
      if (!p) throw mf::Error("InvalidParams", "unknown policy " + name);
      cfg.policies.push_back(*p);
    }
  }

  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  json resolved;
  resolved["subcommand"] = "sweep";
  resolved["master_seed"] = cfg.master_seed;
  resolved["jobs"] = cfg.jobs;
  resolved["c_grid"] = cfg.c_grid;
  resolved["b_grid"] = cfg.b_grid;
  json pols = json::array();
  for (auto p : cfg.policies) pols.push_back(mf::policy_name(p));
  resolved["policies"] = pols;
  resolved["n_instances"] = cfg.families.size();
  resolved["quota_probe"] = with_quota_probe;
  mf::write_json_file((dir / "resolved_config.json").string(), resolved);
  echo_config(resolved);

  std::vector<mf::SweepRecord> records = mf::run_sweep(cfg);
  {
    std::ofstream csv(dir / "records.csv");
    if (!csv) throw mf::Error("IoError", "cannot write records.csv");
    mf::write_records_csv(csv, records);
  }
  write_reports(records, dir, with_quota_probe, {1, 2, 3});
  std::cerr << "sweep: " << records.size() << " records -> " << out_dir << "\n";
  return 0;
}

int cmd_report(const std::string& records_path, const std::string& kind,
               const std::string& out) {
  std::ifstream in(records_path);
  if (!in) throw mf::Error("IoError", "cannot open " + records_path);
  std::vector<mf::SweepRecord> records = mf::read_records_csv(in);
  echo_config({{"subcommand", "report"},
               {"records", records_path},
               {"kind", kind},
               {"n_records", records.size()}});
  json j;
  if (kind == "bound")
    j = mf::bound_validation_report(records);
  else if (kind == "predictors")
    j = mf::predictor_eval(records);
  else if (kind == "slowdown")
    j = mf::slowdown_table(records);
  else if (kind == "stability")
    j = mf::subgroup_stability(records);
  else if (kind == "gap")
    j = mf::gap_posthoc(records);
  else
    throw mf::Error("InvalidParams", "unknown report kind " + kind);
  emit(j, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"T-state delivery scheduling and execution analysis"};
  app.require_subcommand(1);

  // generate
  std::string g_family, g_out;
  std::optional<std::int64_t> g_layers, g_width;
  std::optional<double> g_tfrac, g_density;
  std::uint64_t g_seed = 1;
  auto* generate = app.add_subcommand("generate", "Generate a workload DAG");
  generate->add_option("--family", g_family, "high|medium|low")->required();
  generate->add_option("--layers", g_layers);
  generate->add_option("--width", g_width);
  generate->add_option("--t-fraction", g_tfrac);
  generate->add_option("--density", g_density);
  generate->add_option("--seed", g_seed);
  generate->add_option("--out", g_out, "output DAG JSON (default stdout)");

  // schedule
  std::string s_dag, s_policy, s_out, s_trace_out;
  std::optional<std::int64_t> s_c;
  auto* schedule = app.add_subcommand("schedule", "Schedule a DAG");
  schedule->add_option("--dag", s_dag)->required();
  schedule->add_option("--policy", s_policy, "static|ca|smooth|quota")->required();
  schedule->add_option("--c", s_c, "capacity (ca/quota)");
  schedule->add_option("--out", s_out);
  schedule->add_option("--trace-out", s_trace_out, "demand trace file");

  // simulate
  std::string sim_trace, sim_out;
  std::int64_t sim_c = 1, sim_b = 0, sim_cap = 0;
  std::optional<double> sim_pacc, sim_kappa;
  int sim_reps = 1;
  std::uint64_t sim_seed = 1;
  auto* simulate = app.add_subcommand("simulate", "Simulate a demand trace");
  simulate->add_option("--trace", sim_trace)->required();
  simulate->add_option("--c", sim_c)->required();
  simulate->add_option("--b", sim_b);
  simulate->add_option("--p-acc", sim_pacc, "stochastic acceptance probability");
  simulate->add_option("--replications", sim_reps);
  simulate->add_option("--seed", sim_seed);
  simulate->add_option("--cycle-cap", sim_cap);
  simulate->add_option("--kappa", sim_kappa, "effective-capacity penalty");
  simulate->add_option("--out", sim_out);

  // sweep
  std::string sw_out_dir = "sweep_out", sw_config;
  std::uint64_t sw_seed = 0;
  int sw_jobs = 1;
  std::int64_t sw_cmin = 1, sw_cmax = 7, sw_bmin = 0, sw_bmax = 15;
  std::vector<std::string> sw_policies;
  bool sw_probe = false;
  auto* sweep = app.add_subcommand("sweep", "Run the full evaluation sweep");
  sweep->add_option("--out-dir", sw_out_dir);
  sweep->add_option("--master-seed", sw_seed);
  sweep->add_option("--jobs", sw_jobs);
  sweep->add_option("--c-min", sw_cmin);
  sweep->add_option("--c-max", sw_cmax);
  sweep->add_option("--b-min", sw_bmin);
  sweep->add_option("--b-max", sw_bmax);
  sweep->add_option("--policies", sw_policies, "subset of static,ca,smooth,quota");
  sweep->add_flag("--quota-probe", sw_probe, "also run the quota probe");
  sweep->add_option("--config", sw_config, "JSON config overriding flags");

  // ingest
  std::string in_trace, in_out;
  std::optional<std::int64_t> in_c;
  std::int64_t in_bin = 0;
  auto* ingest = app.add_subcommand("ingest", "Summarize an external trace");
  ingest->add_option("--trace", in_trace)->required();
  ingest->add_option("--c", in_c, "capacity for delta_max");
  ingest->add_option("--bin", in_bin, "bin size for peak-window summary");
  ingest->add_option("--out", in_out);

  // report
  std::string r_records, r_kind = "bound", r_out;
  auto* report = app.add_subcommand("report", "Recompute a report from CSV");
  report->add_option("--records", r_records)->required();
  report->add_option("--kind", r_kind, "bound|predictors|slowdown|stability|gap");
  report->add_option("--out", r_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return cmd_generate(g_family, g_layers, g_width, g_tfrac, g_density,
                          g_seed, g_out);
    if (schedule->parsed())
      return cmd_schedule(s_dag, s_policy, s_c, s_out, s_trace_out);
    if (simulate->parsed())
      return cmd_simulate(sim_trace, sim_c, sim_b, sim_pacc, sim_reps, sim_seed,
                          sim_cap, sim_kappa, sim_out);
    if (sweep->parsed())
      return cmd_sweep(sw_out_dir, sw_seed, sw_jobs, sw_cmin, sw_cmax, sw_bmin,
                       sw_bmax, sw_policies, sw_probe, sw_config);
    if (ingest->parsed()) return cmd_ingest(in_trace, in_c, in_bin, in_out);
    if (report->parsed()) return cmd_report(r_records, r_kind, r_out);
  } catch (const mf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
