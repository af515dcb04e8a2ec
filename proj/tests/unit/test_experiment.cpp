#include <doctest.h>

#include "trk/experiment.hpp"

using namespace trk;

namespace {

ExperimentConfig tiny(std::uint64_t seed) {
  ExperimentConfig c;
  c.bound = 2;
  c.cap = 6;
  c.vcycle_tracks = 5;
  c.mass_bound_measures = 20;
  c.lipschitz_splits = 10;
  c.fellow_sequences = 3;
  c.pants_sequences = 0;
  c.delta_triangles = 5;
  c.closure_cap = 50;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig c;
  c.surface = "s99";
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.workers = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_NOTHROW(ExperimentConfig{}.validate());
}

TEST_CASE("task streams are independent and reproducible") {
  auto a = task_rng(1, 0);
  auto b = task_rng(1, 0);
  auto c = task_rng(1, 1);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
}

TEST_CASE("zero sample counts give vacuous passes") {
  ExperimentConfig c = tiny(1);
  c.vcycle_tracks = c.mass_bound_measures = c.lipschitz_splits = c.fellow_sequences = c.delta_triangles = 0;
  const RunReport r = verify_all(c);
  CHECK(r.ok());
  for (const auto& ch : r.checks) CHECK(ch.violations == 0);
}

TEST_CASE("reports are deterministic in the seed") {
  const RunReport a = verify_all(tiny(9));
  ExperimentConfig c = tiny(9);
  c.workers = 3;
  const RunReport b = verify_all(c);
  CHECK(report_to_csv(a) == report_to_csv(b));
  for (const auto& ch : a.checks) CHECK_MESSAGE(ch.ok(), ch.name << ": " << ch.detail);
  CHECK(report_to_json(a).at("checks").size() == a.checks.size());
  CHECK_THROWS_AS(static_cast<void>(a.check("nonexistent")), std::out_of_range);
}

TEST_CASE("fixtures") {
  CHECK(emit_fixture("s05-chart").at("edges").size() == 9);
  CHECK(emit_fixture("s12-chart").at("edges").size() == 6);
  const Json a = emit_fixture("s05-adapted");
  CHECK(a.at("markers").size() == 2);
  CHECK(a.at("connectors").size() == 2);
  CHECK(emit_fixture("s12-pants").at("pants").size() == 2);
  CHECK_THROWS_AS(emit_fixture("s05-sphere"), std::invalid_argument);
  CHECK_THROWS_AS(emit_fixture("nope"), std::invalid_argument);
}
