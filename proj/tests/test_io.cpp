#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "chase/io.hpp"
#include "chase/oracle_bench.hpp"
#include "test_support.hpp"

using namespace chase;
using namespace chase::testing;

TEST_CASE("function json round trip") {
  const LabelMap lm{{"x", "y"}};
  for (const SetFunction& f :
       {two_cover(), SetFunction::capped_cardinality(2, 1.0),
        SetFunction::additive({0.5, 2.0}),
        SetFunction::explicit_table({0.0, 1.0, 1.0, 1.5})}) {
    const SetFunction back = function_from_json(function_to_json(f, lm), lm);
    CHECK(back.kind() == f.kind());
    for_each_subset(full_mask(2), [&](ElemMask s) {
      CHECK(back.value(s) == doctest::Approx(f.value(s)).epsilon(1e-12));
    });
  }
}

TEST_CASE("conflicting coverage weights are rejected") {
  const LabelMap lm{{"x", "y"}};
  const auto j = nlohmann::json::parse(R"({
    "kind": "weighted-coverage",
    "items": {"x": [["a", 1.0]], "y": [["a", 2.0]]}
  })");
  CHECK_THROWS_AS(function_from_json(j, lm), input_error);
}

TEST_CASE("instance json round trip") {
  Rng rng(3);
  const ChaseInstance inst = random_scenario(6, 3, 2, 2, 0.9, rng);
  const ChaseInstance back = instance_from_json(instance_to_json(inst));
  CHECK(back.n == inst.n);
  CHECK(back.labels == inst.labels);
  CHECK(back.constraint.parts() == inst.constraint.parts());
  CHECK(back.constraint.caps() == inst.constraint.caps());
  REQUIRE(back.steps.size() == inst.steps.size());
  for (std::size_t t = 0; t < inst.steps.size(); ++t) {
    CHECK(back.steps[t].available == inst.steps[t].available);
    CHECK(back.steps[t].target == inst.steps[t].target);
    for_each_subset(inst.steps[t].available, [&](ElemMask s) {
      CHECK(back.steps[t].fn.value(s) ==
            doctest::Approx(inst.steps[t].fn.value(s)).epsilon(1e-12));
    });
  }
}

TEST_CASE("malformed json reports line and column") {
  const char* path = "bad_instance.json";
  {
    std::ofstream out(path);
    out << "{\n  \"constraint\": {\n";  // truncated on line 3
  }
  try {
    load_instance(path);
    CHECK(false);
  } catch (const input_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
  std::remove(path);
}

TEST_CASE("points attachment") {
  const auto j = nlohmann::json::parse(R"({
    "points": [[0.5, 0.0], [0.25, 0.25]]
  })");
  const auto pts = points_from_json(j, 2);
  REQUIRE(pts.size() == 2);
  CHECK(pts[1][1] == 0.25);
  CHECK_THROWS_AS(points_from_json(j, 3), input_error);
}

TEST_CASE("csv renderings are stable") {
  Trajectory traj;
  traj.steps.push_back(TrajectoryStep{{0.5, 0.0}, 0.5, 0.39, 0.0, 2, 1});
  traj.ledger = 0.5;
  CHECK(trajectory_csv(traj) == "t,movement,certificate,sep_count\n1,0.5,0.39,3\n");

  CHECK(set_to_labels(0b101, {"a", "b", "c"}) == "a;c");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == format_double(1.0 / 3.0));

  const std::vector<RoundedStep> rounded{{1, 0b10, 1, 2.0}};
  CHECK(rounded_csv(rounded, {"a", "b"}) == "t,set,recourse,value\n1,b,1,2\n");
}
