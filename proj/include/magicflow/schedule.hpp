#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "magicflow/dag.hpp"

namespace magicflow {

enum class Policy { Static, CapacityAware, Smooth, Quota };

const char* policy_name(Policy p);
std::optional<Policy> policy_from_name(const std::string& name);

// Node-to-step assignment, 1-based logical steps. `steps` is aligned with
// the source DAG's node order; t_static is the largest assigned step
// (0 for an empty DAG).
struct Schedule {
  Policy policy = Policy::Static;
  std::vector<std::int64_t> steps;
  std::int64_t t_static = 0;
};

// Per-step T-state demand D(1..t_static).
struct DemandTrace {
  std::vector<std::int64_t> demands;
};

// Pure ASAP: step(v) = es(v) + 1; t_static equals the critical path.
Schedule schedule_static(const DagView& view);

// List scheduling with a per-step T quota of c. Ready non-T nodes are
// placed freely; ready T nodes are taken in ascending id order up to the
// quota, the rest deferred. The resulting trace satisfies D(t) <= c.
Schedule schedule_capacity_aware(const DagView& view, std::int64_t c);

// Quota scheduling like schedule_capacity_aware, but ready T gates are
// ordered by (ascending slack, descending T-height, ascending id).
// T-height of v = maximum number of T nodes on any path starting at v.
Schedule schedule_quota(const DagView& view, std::int64_t c);

// Slack-based demand reshaping. Extends the horizon by the mean positive
// slack of the T gates, recomputes ALAP deadlines at the extended horizon,
// then runs a forward pass that schedules ready T gates in (deadline, id)
// order against an even-pace target, forcing any gate that has reached its
// deadline. Degenerates to schedule_static when no T gate has slack.
Schedule schedule_smooth(const DagView& view);

// Max T nodes on any path starting at each node (the node included).
std::vector<std::int64_t> t_heights(const DagView& view);

DemandTrace demand_trace(const DagView& view, const Schedule& s);

// Error kinds: PrecedenceViolated, UnassignedNode, BadStep.
std::optional<Error> validate_schedule(const DagView& view, const Schedule& s);

}  // namespace magicflow
