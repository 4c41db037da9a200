#include <doctest.h>

#include "fixtures.hpp"
#include "magicflow/dag.hpp"

using namespace magicflow;
using fixtures::build;

TEST_CASE("validate accepts a chain and an empty DAG") {
  CHECK(!validate(fixtures::chain_t(3)).has_value());
  CHECK(!validate(CircuitDag{}).has_value());
}

TEST_CASE("validate rejects malformed DAGs") {
  auto two_cycle = build({{0, true}, {1, true}}, {{0, 1}, {1, 0}});
  auto err = validate(two_cycle);
  REQUIRE(err.has_value());
  CHECK(err->kind() == "CycleDetected");

  auto dangling = build({{0, true}}, {{0, 7}});
  err = validate(dangling);
  REQUIRE(err.has_value());
  CHECK(err->kind() == "DanglingEdge");

  auto dup = build({{0, true}, {0, false}}, {});
  err = validate(dup);
  REQUIRE(err.has_value());
  CHECK(err->kind() == "DuplicateId");

  auto self_loop = build({{0, true}}, {{0, 0}});
  err = validate(self_loop);
  REQUIRE(err.has_value());
  CHECK(err->kind() == "SelfLoop");

  auto dup_edge = build({{0, true}, {1, true}}, {{0, 1}, {0, 1}});
  err = validate(dup_edge);
  REQUIRE(err.has_value());
  CHECK(err->kind() == "DuplicateEdge");

  CHECK_THROWS_AS(DagView::build(two_cycle), Error);
}

TEST_CASE("t_count") {
  auto mixed = build({{0, true}, {1, true}, {2, true}, {3, true},
                      {4, false}, {5, false}},
                     {});
  CHECK(t_count(mixed) == 4);
  CHECK(t_count(CircuitDag{}) == 0);
  auto tct = build({{0, true}, {1, false}, {2, true}}, {{0, 1}, {1, 2}});
  CHECK(t_count(tct) == 2);
}

TEST_CASE("t_depth counts T nodes on the longest T-weighted path") {
  auto tct = build({{0, true}, {1, false}, {2, true}}, {{0, 1}, {1, 2}});
  CHECK(t_depth(tct) == 2);
  CHECK(t_depth(fixtures::independent_t(4)) == 1);
  CHECK(t_depth(CircuitDag{}) == 0);
  auto no_t = build({{0, false}, {1, false}}, {{0, 1}});
  CHECK(t_depth(no_t) == 0);
  CHECK(t_depth(fixtures::diamond_t()) == 3);
}

TEST_CASE("asap_levels") {
  auto view_dag = fixtures::chain_t(3);
  auto view = DagView::build(view_dag);
  CHECK(asap_levels(view) == std::vector<std::int64_t>{0, 1, 2});

  auto dview_dag = fixtures::diamond_t();
  auto dview = DagView::build(dview_dag);
  CHECK(asap_levels(dview) == std::vector<std::int64_t>{0, 1, 1, 2});

  auto iview_dag = fixtures::independent_t(2);
  auto iview = DagView::build(iview_dag);
  CHECK(asap_levels(iview) == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("alap_levels") {
  auto view_dag = fixtures::chain_t(3);
  auto view = DagView::build(view_dag);
  CHECK(alap_levels(view, 3) == std::vector<std::int64_t>{0, 1, 2});

  auto with_isolated = build(
      {{0, true}, {1, true}, {2, true}, {3, true}}, {{0, 1}, {1, 2}});
  auto wview = DagView::build(with_isolated);
  CHECK(alap_levels(wview, 3)[3] == 2);

  CHECK_THROWS_AS(alap_levels(view, 2), Error);
  try {
    alap_levels(view, 2);
  } catch (const Error& e) {
    CHECK(e.kind() == "HorizonTooSmall");
  }
}

TEST_CASE("slack_analysis golden examples") {
  auto chain = slack_analysis(fixtures::chain_t(3));
  CHECK(chain.horizon == 3);
  for (auto s : chain.slack) CHECK(s == 0);
  REQUIRE(chain.slack_ratio.has_value());
  CHECK(*chain.slack_ratio == doctest::Approx(0.0));

  auto with_isolated = build(
      {{0, true}, {1, true}, {2, true}, {3, true}}, {{0, 1}, {1, 2}});
  auto a = slack_analysis(with_isolated);
  CHECK(a.horizon == 3);
  CHECK(a.slack[3] == 2);
  REQUIRE(a.slack_ratio.has_value());
  CHECK(*a.slack_ratio == doctest::Approx(0.25));

  auto indep = slack_analysis(fixtures::independent_t(4));
  CHECK(indep.horizon == 1);
  for (auto s : indep.slack) CHECK(s == 0);
  CHECK(*indep.slack_ratio == doctest::Approx(0.0));
}

TEST_CASE("slack_analysis degenerate inputs") {
  auto empty = slack_analysis(CircuitDag{});
  CHECK(empty.horizon == 0);
  CHECK(!empty.slack_ratio.has_value());

  auto no_t = slack_analysis(build({{0, false}, {1, false}}, {{0, 1}}));
  CHECK(!no_t.slack_ratio.has_value());
}

TEST_CASE("slack invariants: es <= ls, slack >= 0, edge monotonicity") {
  auto base = fixtures::diamond_t();
  auto a = slack_analysis(base);
  for (std::size_t i = 0; i < a.es.size(); ++i) {
    CHECK(a.es[i] <= a.ls[i]);
    CHECK(a.slack[i] >= 0);
  }

  // Adding an edge never decreases es nor increases ls at a fixed horizon.
  auto with_isolated = build(
      {{0, true}, {1, true}, {2, true}, {3, true}}, {{0, 1}, {1, 2}});
  auto before = slack_analysis(with_isolated);
  auto extended = with_isolated;
  extended.edges.push_back({0, 3});
  auto bview = DagView::build(with_isolated);
  auto eview = DagView::build(extended);
  auto es_before = asap_levels(bview);
  auto es_after = asap_levels(eview);
  auto ls_before = alap_levels(bview, before.horizon);
  auto ls_after = alap_levels(eview, before.horizon);
  for (std::size_t i = 0; i < es_before.size(); ++i) {
    CHECK(es_after[i] >= es_before[i]);
    CHECK(ls_after[i] <= ls_before[i]);
  }
}
