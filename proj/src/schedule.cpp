#include "magicflow/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace magicflow {

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::Static: return "static";
    case Policy::CapacityAware: return "ca";
    case Policy::Smooth: return "smooth";
    case Policy::Quota: return "quota";
  }
  return "?";
}

std::optional<Policy> policy_from_name(const std::string& name) {
  if (name == "static") return Policy::Static;
  if (name == "ca") return Policy::CapacityAware;
  if (name == "smooth") return Policy::Smooth;
  if (name == "quota") return Policy::Quota;
  return std::nullopt;
}

std::vector<std::int64_t> t_heights(const DagView& view) {
  std::vector<std::int64_t> th(view.size(), 0);
  const auto& order = view.topo();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::int64_t down = 0;
    for (int s : view.succs(*it)) down = std::max(down, th[s]);
    th[*it] = down + (view.is_t(*it) ? 1 : 0);
  }
  return th;
}

Schedule schedule_static(const DagView& view) {
  Schedule s;
  s.policy = Policy::Static;
  std::vector<std::int64_t> es = asap_levels(view);
  s.steps.resize(view.size());
  for (int i = 0; i < view.size(); ++i) {
    s.steps[i] = es[i] + 1;
    s.t_static = std::max(s.t_static, s.steps[i]);
  }
  return s;
}

namespace {

// Shared forward list-scheduling pass. At each step, ready non-T nodes
// are placed immediately; ready T nodes are taken in `priority` order
// (lower key first) up to the step's quota. `quota_at` may return
// INT64_MAX for an unbounded step; `force_at_deadline` adds the smooth
// policy's completion guarantee.
struct TKey {
  std::int64_t primary = 0, secondary = 0;
  std::int64_t id = 0;
  bool operator<(const TKey& o) const {
    if (primary != o.primary) return primary < o.primary;
    if (secondary != o.secondary) return secondary < o.secondary;
    return id < o.id;
  }
};

template <typename QuotaFn>
Schedule forward_pass(const DagView& view, Policy tag,
                      const std::vector<TKey>& keys, QuotaFn quota_at,
                      const std::vector<std::int64_t>* deadlines) {
  Schedule s;
  s.policy = tag;
  int n = view.size();
  s.steps.assign(n, 0);
  std::vector<int> pending(n);
  std::vector<int> released;
  for (int i = 0; i < n; ++i) {
    pending[i] = static_cast<int>(view.preds(i).size());
    if (pending[i] == 0) released.push_back(i);
  }
  std::vector<std::pair<TKey, int>> ready_t;  // sorted lazily each step
  std::vector<int> ready_plain;
  int scheduled = 0;
  std::int64_t t = 0;
  std::int64_t remaining_t = 0;
  for (int i = 0; i < n; ++i)
    if (view.is_t(i)) ++remaining_t;

  while (scheduled < n) {
    ++t;
    for (int i : released) {
      if (view.is_t(i))
        ready_t.emplace_back(keys[i], i);
      else
        ready_plain.push_back(i);
    }
    released.clear();
    std::sort(ready_t.begin(), ready_t.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    auto place = [&](int i) {
      s.steps[i] = t;
      s.t_static = std::max(s.t_static, t);
      ++scheduled;
      for (int succ : view.succs(i))
        if (--pending[succ] == 0) released.push_back(succ);
    };

    for (int i : ready_plain) place(i);
    ready_plain.clear();

    std::int64_t quota = quota_at(t, remaining_t);
    std::vector<std::pair<TKey, int>> deferred;
    std::int64_t taken = 0;
    for (auto& [key, i] : ready_t) {
      bool forced = deadlines && (*deadlines)[i] <= t;
      if (taken < quota || forced) {
        place(i);
        ++taken;
        --remaining_t;
      } else {
        deferred.emplace_back(key, i);
      }
    }
    ready_t.swap(deferred);
  }
  return s;
}

std::vector<TKey> id_keys(const DagView& view) {
  std::vector<TKey> keys(view.size());
  for (int i = 0; i < view.size(); ++i) keys[i] = {0, 0, view.id(i)};
  return keys;
}

}  // namespace

Schedule schedule_capacity_aware(const DagView& view, std::int64_t c) {
  if (c < 1) throw Error("InvalidParams", "capacity must be >= 1");
  return forward_pass(
      view, Policy::CapacityAware, id_keys(view),
      [c](std::int64_t, std::int64_t) { return c; }, nullptr);
}

Schedule schedule_quota(const DagView& view, std::int64_t c) {
  if (c < 1) throw Error("InvalidParams", "capacity must be >= 1");
  SlackAnalysis sa = slack_analysis(view);
  std::vector<std::int64_t> th = t_heights(view);
  std::vector<TKey> keys(view.size());
  for (int i = 0; i < view.size(); ++i)
    keys[i] = {sa.slack[i], -th[i], view.id(i)};
  return forward_pass(
      view, Policy::Quota, keys,
      [c](std::int64_t, std::int64_t) { return c; }, nullptr);
}

Schedule schedule_smooth(const DagView& view) {
  SlackAnalysis sa = slack_analysis(view);
  std::int64_t t_min = sa.horizon;
  std::int64_t n_t = 0, pos_slack_sum = 0, pos_slack_count = 0;
  for (int i = 0; i < view.size(); ++i) {
    if (!view.is_t(i)) continue;
    ++n_t;
    if (sa.slack[i] > 0) {
      pos_slack_sum += sa.slack[i];
      ++pos_slack_count;
    }
  }
  std::int64_t extension =
      pos_slack_count == 0
          ? 0
          : (pos_slack_sum + pos_slack_count - 1) / pos_slack_count;  // ceil
  std::int64_t horizon = t_min + extension;
  if (view.size() == 0) {
    Schedule s;
    s.policy = Policy::Smooth;
    return s;
  }
  std::vector<std::int64_t> ls = alap_levels(view, horizon);
  std::vector<std::int64_t> deadlines(view.size());
  std::vector<TKey> keys(view.size());
  for (int i = 0; i < view.size(); ++i) {
    deadlines[i] = ls[i] + 1;  // 1-based step deadline
    keys[i] = {deadlines[i], 0, view.id(i)};
  }
  // Even-pace target: finish the remaining T gates within the horizon,
  // front-loading by one step so the deadline override stays a rarity.
  auto quota_at = [horizon](std::int64_t t, std::int64_t remaining) {
    if (t >= horizon) return std::numeric_limits<std::int64_t>::max();
    std::int64_t steps_after = horizon - t;
    return (remaining + steps_after - 1) / steps_after;
  };
  return forward_pass(view, Policy::Smooth, keys, quota_at, &deadlines);
}

DemandTrace demand_trace(const DagView& view, const Schedule& s) {
  DemandTrace trace;
  trace.demands.assign(static_cast<std::size_t>(s.t_static), 0);
  for (int i = 0; i < view.size(); ++i)
    if (view.is_t(i)) ++trace.demands[static_cast<std::size_t>(s.steps[i] - 1)];
  return trace;
}

std::optional<Error> validate_schedule(const DagView& view, const Schedule& s) {
  if (static_cast<int>(s.steps.size()) != view.size())
    return Error("UnassignedNode",
                 "assignment covers " + std::to_string(s.steps.size()) +
                     " of " + std::to_string(view.size()) + " nodes");
  for (int i = 0; i < view.size(); ++i) {
    if (s.steps[i] < 1 || s.steps[i] > s.t_static)
      return Error("BadStep", "node " + std::to_string(view.id(i)) +
                                  " assigned step " + std::to_string(s.steps[i]));
  }
  for (int i = 0; i < view.size(); ++i) {
    for (int p : view.preds(i)) {
      if (s.steps[p] >= s.steps[i])
        return Error("PrecedenceViolated",
                     "edge (" + std::to_string(view.id(p)) + "," +
                         std::to_string(view.id(i)) + ") not respected");
    }
  }
  return std::nullopt;
}

}  // namespace magicflow
