#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trk/curve.hpp"
#include "trk/train_track.hpp"

namespace trk {

/// One traversal of a branch by a trainpath.
struct BranchVisit {
  int branch = 0;
  bool forward = true;  // start half to end half
};

/// Resolves an integral measure into closed trainpaths by following strands
/// through the switches.
std::vector<std::vector<BranchVisit>> trainpath_cycles(const TrainTrack& t, std::span<const std::int64_t> mu);

/// True iff the single trainpath of mu visits every branch at most twice, and
/// twice only in opposite directions. Necessary for a vertex cycle but not
/// sufficient: two loops sharing interleaved branches also pass.
/// Throws TrackError("NotConnectedTrainpath") when mu resolves into several cycles.
bool passes_at_most_twice_opposite(const TrainTrack& t, std::span<const std::int64_t> mu);

/// The test above, plus: the doubled visits form one arc traversed out and
/// back (a dumbbell), so the path is an embedded loop or two loops joined by
/// an arc. Throws TrackError("NotConnectedTrainpath") like the test above.
bool is_vertex_cycle_by_trainpath(const TrainTrack& t, std::span<const std::int64_t> mu);

/// Every nonzero integral measure with entries at most 2 whose trainpath is a
/// single cycle passing passes_at_most_twice_opposite, sorted.
std::vector<Measure> trainpath_candidate_measures(const TrainTrack& t);

/// The candidates that also pass is_vertex_cycle_by_trainpath, sorted.
std::vector<Measure> trainpath_vertex_measures(const TrainTrack& t);

/// Primitive integral measures spanning the extreme rays of V(t), sorted.
std::vector<Measure> extreme_ray_measures(const TrainTrack& t);

struct VertexCycle {
  Measure measure;
  NormalCurve curve;
};

/// Extreme rays paired with their curves. Throws TrackError("RealizationFailure")
/// if a pushforward is not a valid curve.
std::vector<VertexCycle> vertex_cycles(const TrainTrack& t);

/// The vertex cycle whose measure, written in canonical branch labels, is
/// lexicographically least. Throws TrackError("NoVertexCycles").
NormalCurve phi(const TrainTrack& t);
NormalCurve phi(const TrainTrack& t, const std::vector<VertexCycle>& cycles);

struct MassBoundCheck {
  bool ok = true;
  std::int64_t bound = 0;         // 2 * total mass
  std::int64_t max_intersection = 0;
  int witness = -1;               // index into the vertex cycles
};

/// Checks i(c, xi) <= 2 mu(t) for every vertex cycle xi, where c is the
/// multicurve carried by mu.
MassBoundCheck mass_bound_check(const TrainTrack& t, std::span<const std::int64_t> mu, const MultiCurve& c,
                              const std::vector<VertexCycle>& cycles);

}  // namespace trk
