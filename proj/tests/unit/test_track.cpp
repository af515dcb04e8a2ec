#include <doctest.h>

#include <random>

#include "trk/experiment.hpp"
#include "trk/intersection.hpp"

using namespace trk;

TEST_CASE("adapted tracks are complete and carry their pants curves") {
  for (const char* name : {"s05", "s12"}) {
    const AdaptedTrack at = adapted_track(name);
    const SurfaceSig sig = at.track.chart()->signature();
    CHECK(at.track.num_branches() == sig.complete_track_branches());
    CHECK(at.track.num_switches() == sig.complete_track_switches());
    CHECK(at.track.generic());
    CHECK(recurrence_check(at.track));
    REQUIRE(static_cast<int>(at.pants.size()) == sig.complexity());
    for (std::size_t i = 0; i < at.pants.size(); ++i) {
      CHECK(at.track.check_switch_conditions(at.pants_measures[i]));
      CHECK(at.track.pushforward(at.pants_measures[i]) == at.pants[i].coords());
      CHECK(at.track.is_large(at.large[i]));
      for (std::size_t j = 0; j < i; ++j) CHECK(intersection_number(at.pants[i], at.pants[j]) == 0);
    }
  }
}

TEST_CASE("vertex cycles cross each branch at most twice and give valid curves") {
  for (const char* name : {"s05", "s12"}) {
    const TrainTrack t = adapted_track(name).track;
    const auto vc = vertex_cycles(t);
    CHECK_FALSE(vc.empty());
    for (const auto& v : vc) {
      for (auto x : v.measure) CHECK(x <= 2);
      CHECK(is_vertex_cycle_by_trainpath(t, v.measure));
      CHECK(v.curve.coords() == t.pushforward(v.measure));
      CHECK(total_mass(v.measure) <= 2 * t.num_branches());
    }
  }
}

TEST_CASE("splits keep counts and carry measures") {
  const AdaptedTrack at = adapted_track("s05");
  const TrainTrack& t = at.track;
  const auto vc = vertex_cycles(t);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Measure mu = random_guide(t, vc, 5, false, rng);
    for (int e : t.large_branches()) {
      for (SplitDir d : {SplitDir::Left, SplitDir::Right}) {
        const SplitResult r = split(t, {e, d});
        CHECK(r.track.num_branches() == t.num_branches());
        CHECK(r.track.num_switches() == t.num_switches());
        CHECK(r.matrix.rows() == t.num_branches());
        CHECK(r.matrix.cols() == r.track.num_branches());
        // anything carried by the split track is carried by the original
        for (const auto& v : vertex_cycles(r.track)) {
          const Measure down = r.matrix.apply(v.measure);
          CHECK(t.check_switch_conditions(down));
          CHECK(t.pushforward(down) == r.track.pushforward(v.measure));
        }
      }
      if (mu[e] == 0) continue;
      const SplitDir d = compatible_split_direction(t, e, mu);
      const auto pre = split_preimage(t, {e, d}, mu);
      REQUIRE(pre.has_value());
      CHECK(split(t, {e, d}).matrix.apply(*pre) == mu);
    }
  }
  const SplitResult c = split(t, {t.large_branches().front(), SplitDir::Central});
  CHECK(c.track.num_branches() == t.num_branches() - 1);
  CHECK_THROWS_AS(split(t, {-1, SplitDir::Left}), TrackError);
}

TEST_CASE("decomposition at the adapted track") {
  const AdaptedTrack at = adapted_track("s12");
  const auto vc = vertex_cycles(at.track);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Measure mu = random_guide(at.track, vc, 4, false, rng);
    const PantsDecomposition d = decompose_at_adapted(at, mu);
    Measure sum = d.mu0;
    for (std::size_t i = 0; i < d.n.size(); ++i) {
      CHECK(d.n[i] >= 0);
      for (std::size_t b = 0; b < sum.size(); ++b) sum[b] += d.n[i] * at.pants_measures[i][b];
      CHECK(d.mu0[at.marker[i]] == 0);
    }
    CHECK(sum == mu);
  }
}

TEST_CASE("track and move JSON round trip") {
  for (const char* name : {"s05", "s12"}) {
    const AdaptedTrack at = adapted_track(name);
    const TrainTrack back = track_from_json(Json::parse(track_to_json(at.track).dump()));
    CHECK(track_to_json(back) == track_to_json(at.track));
    CHECK(extreme_ray_measures(back) == extreme_ray_measures(at.track));
    const Json a = adapted_to_json(at);
    CHECK(a.at("pants").size() == at.pants.size());
  }
  const SplitMove m{3, SplitDir::Central};
  CHECK(move_to_json(m) == Json{{"branch", 3}, {"dir", "C"}});
  CHECK(move_from_json(move_to_json(m)) == m);
  CHECK_THROWS_AS(move_from_json(Json{{"branch", 1}}), SerializationError);
  CHECK(measure_from_json(measure_to_json(Measure{1, 0, 2})) == Measure{1, 0, 2});
}
