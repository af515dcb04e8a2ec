#include <doctest.h>

#include <random>
#include <set>

#include "trk/experiment.hpp"

using namespace trk;

TEST_CASE("guided sequences carry the guide exactly") {
  for (const char* name : {"s05", "s12"}) {
    const TrainTrack t = adapted_track(name).track;
    const auto vc = vertex_cycles(t);
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto rng = task_rng(s, 0);
      const Measure guide = random_guide(t, vc, 10, true, rng);
      const SplittingSequence seq = run_splitting_sequence(t, guide, 40);
      CHECK(seq.tracks.size() == seq.moves.size() + 1);
      CHECK(seq.matrices.size() == seq.moves.size());
      CHECK(seq.preimages.front() == guide);
      CHECK(carrying_exact(seq));
      if (seq.halt == Halt::VertexCycle) CHECK(is_vertex_cycle_by_trainpath(seq.tracks.back(), seq.preimages.back()));
      for (const auto& m : seq.moves) CHECK(m.dir != SplitDir::Central);
      const SplittingSequence p = prefix(seq, static_cast<int>(seq.moves.size()) / 2);
      CHECK(p.moves.size() == seq.moves.size() / 2);
      CHECK(carrying_exact(p));
      CHECK(phi_path(seq).size() == seq.tracks.size());
    }
  }
}

TEST_CASE("a guide that is already a vertex cycle stops at once") {
  const TrainTrack t = adapted_track("s05").track;
  const auto vc = vertex_cycles(t);
  const SplittingSequence seq = run_splitting_sequence(t, vc.front().measure, 10);
  CHECK(seq.moves.empty());
  CHECK(seq.halt == Halt::VertexCycle);
  CHECK_THROWS_AS(run_splitting_sequence(t, Measure(t.num_branches(), 1), 10), TrackError);
}

TEST_CASE("full splitting rounds split every large branch once") {
  const TrainTrack t = adapted_track("s05").track;
  auto rng = task_rng(2, 0);
  const Measure guide = random_guide(t, vertex_cycles(t), 1000, false, rng);
  const SplittingSequence seq = run_full_splitting_sequence(t, guide, 3);
  CHECK(carrying_exact(seq));
  REQUIRE(seq.round_starts.size() >= 1);
  CHECK(seq.round_starts.front() == 0);
  const int first_round = seq.round_starts.size() > 1 ? seq.round_starts[1] : static_cast<int>(seq.moves.size());
  CHECK(first_round == static_cast<int>(t.large_branches().size()));
  std::set<int> split_at;
  for (int j = 0; j < first_round; ++j) split_at.insert(seq.moves[j].branch);
  CHECK(split_at.size() == t.large_branches().size());
}

TEST_CASE("split closure of the adapted tracks") {
  // frozen from the breadth-first closure under left and right splits
  const SplitClosure c = split_closure(adapted_track("s05").track, 20000);
  CHECK(c.complete);
  CHECK(c.tracks.size() == 358);
  const ClosureBounds b = closure_bounds(c);
  CHECK(b.types == 358);
  CHECK(b.max_vertex_cycles == 7);
  CHECK(b.max_cycle_mass == 14);
  CHECK(b.max_cycle_mass_sum == 81);
  for (const auto& t : c.tracks) {
    CHECK(t.num_branches() == 12);
    CHECK(t.num_switches() == 8);
  }
  const SplitClosure small = split_closure(adapted_track("s05").track, 10);
  CHECK_FALSE(small.complete);
}

TEST_CASE("residual ratio supremum on the adapted track") {
  const AdaptedTrack at = adapted_track("s05");
  const Rational sup = residual_ratio_sup(at);
  CHECK(sup == Rational(7, 2));
  const auto vc = vertex_cycles(at.track);
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto rng = task_rng(s, 1);
    const Measure mu = random_guide(at.track, vc, 20, false, rng);
    CHECK(residual_ratio(at, mu) <= sup);
  }
}

TEST_CASE("quasigeodesic constant from distance matrices") {
  // a geodesic segment
  std::vector<std::vector<int>> line(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) line[i][j] = std::abs(i - j);
  }
  CHECK(min_quasigeodesic_constant(line, Rational(4)) == Rational(1));
  // a path that returns to its start needs a larger constant
  std::vector<std::vector<int>> back{{0, 2, 0}, {2, 0, 2}, {0, 2, 0}};
  const auto l = min_quasigeodesic_constant(back, Rational(8));
  REQUIRE(l.has_value());
  CHECK(*l > Rational(1));
}
