#include "magicflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace magicflow {

nlohmann::json dag_to_json(const CircuitDag& dag) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : dag.nodes)
    nodes.push_back({{"id", n.id}, {"t", n.is_t}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : dag.edges)
    edges.push_back(nlohmann::json::array({u, v}));
  return {{"nodes", nodes}, {"edges", edges}};
}

CircuitDag dag_from_json(const nlohmann::json& j) {
  CircuitDag dag;
  try {
    for (const auto& n : j.at("nodes"))
      dag.nodes.push_back(
          {n.at("id").get<std::int64_t>(), n.at("t").get<bool>()});
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw Error("ParseError", "edge entries must be [pred, succ] pairs");
      dag.edges.emplace_back(e[0].get<std::int64_t>(),
                             e[1].get<std::int64_t>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error("ParseError", std::string("bad DAG JSON: ") + ex.what());
  }
  if (auto err = validate(dag)) throw *err;
  return dag;
}

nlohmann::json schedule_to_json(const DagView& view, const Schedule& s) {
  nlohmann::json assignment = nlohmann::json::array();
  for (int i = 0; i < view.size(); ++i)
    assignment.push_back(nlohmann::json::array({view.id(i), s.steps[i]}));
  return {{"policy", policy_name(s.policy)}, {"assignment", assignment}};
}

Schedule schedule_from_json(const DagView& view, const nlohmann::json& j) {
  Schedule s;
  try {
    auto policy = policy_from_name(j.at("policy").get<std::string>());
    if (!policy) throw Error("ParseError", "unknown policy tag");
    s.policy = *policy;
    s.steps.assign(view.size(), 0);
    for (const auto& pair : j.at("assignment")) {
      std::int64_t id = pair.at(0).get<std::int64_t>();
      std::int64_t step = pair.at(1).get<std::int64_t>();
      int idx = view.index_of(id);
      if (idx < 0)
        throw Error("ParseError",
                    "assignment references unknown node " + std::to_string(id));
      s.steps[idx] = step;
      s.t_static = std::max(s.t_static, step);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error("ParseError", std::string("bad schedule JSON: ") + ex.what());
  }
  return s;
}

DemandTrace read_trace(std::istream& in) {
  DemandTrace trace;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    std::string token = line.substr(begin, end - begin + 1);
    std::int64_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error("ParseError", "line " + std::to_string(lineno) +
                                    ": not an integer: '" + token + "'");
    }
    if (value < 0)
      throw Error("ParseError", "line " + std::to_string(lineno) +
                                    ": negative demand " + token);
    trace.demands.push_back(value);
  }
  return trace;
}

DemandTrace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  return read_trace(in);
}

void write_trace(std::ostream& out, const DemandTrace& trace) {
  for (std::int64_t d : trace.demands) out << d << '\n';
}

CircuitDag read_dag_file(const std::string& path) {
  return dag_from_json(read_json_file(path));
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error("ParseError", path + ": " + ex.what());
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace magicflow
