#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "magicflow/io.hpp"

using namespace magicflow;

TEST_CASE("DAG JSON round-trip") {
  CircuitDag dag = fixtures::diamond_t();
  dag.nodes[1].is_t = false;
  nlohmann::json j = dag_to_json(dag);
  CircuitDag back = dag_from_json(j);
  CHECK(dag_to_json(back).dump() == j.dump());
  CHECK(back.nodes.size() == 4);
  CHECK(!back.nodes[1].is_t);
}

TEST_CASE("DAG JSON validates on load") {
  nlohmann::json j = {{"nodes", {{{"id", 0}, {"t", true}}}},
                      {"edges", {{0, 0}}}};
  CHECK_THROWS_AS(dag_from_json(j), Error);
}

TEST_CASE("schedule JSON round-trip") {
  auto dag = fixtures::chain_t(3);
  auto view = DagView::build(dag);
  Schedule s = schedule_static(view);
  nlohmann::json j = schedule_to_json(view, s);
  CHECK(j["policy"] == "static");
  Schedule back = schedule_from_json(view, j);
  CHECK(back.steps == s.steps);
  CHECK(back.t_static == s.t_static);
  CHECK(back.policy == s.policy);
}

TEST_CASE("trace parsing") {
  std::istringstream in("3\n\n0\n1\n");
  DemandTrace t = read_trace(in);
  CHECK(t.demands == std::vector<std::int64_t>{3, 0, 1});

  std::istringstream empty("");
  CHECK(read_trace(empty).demands.empty());

  std::istringstream negative("1\n-2\n");
  try {
    read_trace(negative);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == "ParseError");
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream garbage("1\nxyz\n");
  CHECK_THROWS_AS(read_trace(garbage), Error);
}

TEST_CASE("trace write/read round-trip") {
  DemandTrace t{{4, 0, 2, 7}};
  std::ostringstream out;
  write_trace(out, t);
  std::istringstream in(out.str());
  CHECK(read_trace(in).demands == t.demands);
}

TEST_CASE("format_double uses a point decimal separator") {
  CHECK(format_double(1.5) == "1.5");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.25) == "0.25");
}
