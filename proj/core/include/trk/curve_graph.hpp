#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "trk/curve.hpp"
#include "trk/train_track.hpp"

namespace trk {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of a distance query.
///
/// `value` is exact when `certified`. Otherwise the true distance lies in
/// [lower, value] (value = -1 when no path was found within the radius cap).
struct Distance {
  int value = 0;
  int lower = 0;
  bool certified = true;

  [[nodiscard]] bool reachable() const { return value >= 0; }
};

/// The curve graph restricted to a finite universe: every curve with
/// coordinates at most `bound`, plus the two endpoints of each query.
///
/// Distances 0, 1 and 2 are decided exactly (equal, disjoint, intersecting
/// but not filling). For filling pairs the true distance is at least 3; a
/// breadth-first search through the universe gives an upper bound, which is
/// exact when it equals 3.
class CurveGraphIndex {
 public:
  CurveGraphIndex(ChartPtr chart, int bound, int radius_cap);

  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] int bound() const { return bound_; }
  [[nodiscard]] int radius_cap() const { return cap_; }
  [[nodiscard]] int size() const { return static_cast<int>(curves_.size()); }
  [[nodiscard]] const NormalCurve& curve(int id) const { return curves_[id]; }
  [[nodiscard]] const std::vector<NormalCurve>& curves() const { return curves_; }
  [[nodiscard]] std::optional<int> find(const NormalCurve& c) const;
  [[nodiscard]] const std::vector<int>& neighbours(int id) const { return adj_[id]; }

  /// Thread-safe; results are cached.
  [[nodiscard]] Distance distance(const NormalCurve& x, const NormalCurve& y) const;
  /// Same, but throws GraphError("NotInUniverse") unless both are universe curves.
  [[nodiscard]] Distance distance_in_universe(const NormalCurve& x, const NormalCurve& y) const;

  /// A path of length distance(x, y) with consecutive curves disjoint, or
  /// nullopt when the distance is uncertified or no such path runs through
  /// the universe.
  [[nodiscard]] std::optional<std::vector<NormalCurve>> geodesic(const NormalCurve& x, const NormalCurve& y) const;

  /// Whether the pair fills the surface (cached).
  [[nodiscard]] bool fills(const NormalCurve& x, const NormalCurve& y) const;

  [[nodiscard]] std::size_t cache_size() const;

 private:
  // Universe neighbours of an arbitrary curve.
  [[nodiscard]] std::vector<int> neighbours_of(const NormalCurve& c) const;
  // BFS distances (capped) from a set of sources over the universe.
  [[nodiscard]] std::vector<int> bfs(const std::vector<int>& sources) const;
  [[nodiscard]] Distance compute(const NormalCurve& x, const NormalCurve& y) const;

  ChartPtr chart_;
  int bound_;
  int cap_;
  std::vector<NormalCurve> curves_;
  std::vector<std::vector<ArcStep>> traces_;
  std::map<Coords, int> id_;
  std::vector<std::vector<int>> adj_;

  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<Coords, Coords>, Distance> cache_;
  mutable std::map<std::pair<Coords, Coords>, bool> fills_cache_;
  mutable std::map<Coords, std::vector<int>> nbr_cache_;
};

/// (x, y)_p = (d(x,p) + d(y,p) - d(x,y)) / 2. Throws GraphError("Unreachable")
/// unless all three distances are certified.
Rational gromov_product(const CurveGraphIndex& g, const NormalCurve& x, const NormalCurve& y, const NormalCurve& p);

/// Symmetrized max-min distance. Throws GraphError("Unreachable") on an uncertified distance.
int hausdorff_distance(const CurveGraphIndex& g, const std::vector<NormalCurve>& a, const std::vector<NormalCurve>& b);

/// Largest distance from a point of `a` to the set `b` (one-sided).
int one_sided_distance(const CurveGraphIndex& g, const std::vector<NormalCurve>& a, const std::vector<NormalCurve>& b);

/// max{a i(gamma, alpha), i(gamma, beta) / (a i(alpha, beta))} <= r.
/// Throws GraphError("DegeneratePair") if i(alpha, beta) = 0.
bool in_L_a(const NormalCurve& gamma, const MultiCurve& alpha, const MultiCurve& beta, Rational a, Rational r);
/// The quantity compared against r in `in_L_a`.
Rational L_a_value(const NormalCurve& gamma, const MultiCurve& alpha, const MultiCurve& beta, Rational a);

struct LScanRow {
  Rational a;
  std::vector<NormalCurve> members;
  int diameter = 0;            // max certified pairwise distance
  bool diameter_certified = true;
};

std::vector<LScanRow> scan_L(const CurveGraphIndex& g, const MultiCurve& alpha, const MultiCurve& beta, Rational r,
                             const std::vector<Rational>& a_grid);

struct DeltaEstimate {
  Rational delta{0};
  int triangles_used = 0;
  int triangles_skipped = 0;
};

/// Thin-triangle constant over the given triangles (vertex triples). Triangles
/// whose sides or point-to-side distances are not certified are skipped.
DeltaEstimate delta_estimate(const CurveGraphIndex& g, const std::vector<std::array<NormalCurve, 3>>& triangles);

}  // namespace trk
