#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "magicflow/dag.hpp"
#include "magicflow/schedule.hpp"

namespace magicflow {

// DAG JSON: {"nodes":[{"id":int,"t":bool},...],"edges":[[a,b],...]}
nlohmann::json dag_to_json(const CircuitDag& dag);
CircuitDag dag_from_json(const nlohmann::json& j);  // validates; throws Error

// Schedule JSON: {"policy":string,"assignment":[[node_id,step],...]}
nlohmann::json schedule_to_json(const DagView& view, const Schedule& s);
Schedule schedule_from_json(const DagView& view, const nlohmann::json& j);

// Trace text: one non-negative integer per line, blank lines ignored.
// Throws ParseError with a line number on malformed input.
DemandTrace read_trace(std::istream& in);
DemandTrace read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const DemandTrace& trace);

CircuitDag read_dag_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

// Locale-independent float formatting shared by all CSV output.
std::string format_double(double v);

}  // namespace magicflow
