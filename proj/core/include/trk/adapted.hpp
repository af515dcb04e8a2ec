#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trk/curve.hpp"
#include "trk/train_track.hpp"

namespace trk {

/// Corner `corner` of triangle `triangle`.
struct CornerRef {
  int triangle = 0;
  int corner = 0;
  friend bool operator==(const CornerRef&, const CornerRef&) = default;
};

/// The track dual to the chart: one branch through each edge, one branch
/// across each corner, one switch next to each triangle side. The listed
/// corner branches are dropped and the resulting bivalent switches smoothed.
/// It carries exactly the normal curves with no arcs at the dropped corners,
/// with branch weights equal to edge weights and corner counts.
TrainTrack combed_track(const ChartPtr& chart, const std::vector<CornerRef>& dropped);

/// A complete track carrying a pants decomposition, one twist connector per
/// pants curve. `large[i]` is the large branch e_i of connector i and
/// `marker[i]` the branch b_i on which only the i-th pants curve has mass.
struct AdaptedTrack {
  std::string name;
  TrainTrack track;
  std::vector<NormalCurve> pants;
  std::vector<Measure> pants_measures;
  std::vector<int> large;
  std::vector<int> marker;
  std::vector<std::vector<int>> connector;  // branches carrying pants curve i
};

/// Built-in adapted track ("s05" or "s12"). Throws std::invalid_argument("UnknownSurface").
AdaptedTrack adapted_track(const std::string& surface);
AdaptedTrack adapted_track(const SurfaceSig& sig);

struct PantsDecomposition {
  Measure mu0;
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> mu0_at_large;  // mu0(e_i)
};

/// mu = mu0 + sum n_i nu_i with mu0(b_i) = 0. Throws TrackError("NotAdapted")
/// if mu is not a measure on the track or mu0 would be negative.
PantsDecomposition decompose_at_adapted(const AdaptedTrack& at, std::span<const std::int64_t> mu);

}  // namespace trk
