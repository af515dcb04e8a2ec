#pragma once

#include <cstdint>

#include "trk/curve.hpp"

namespace trk {

/// Two curves drawn together as straight chords inside each triangle, with
/// their points on every edge interleaved. Innermost bigons are removed by
/// swapping adjacent points of the two curves on each edge the bigon spans,
/// all pairwise disjoint ones in one pass; when none is left the
/// configuration is in minimal position.
///
/// This is deliberately independent of `intersection_number`: it never looks
/// at parallel stretches, only at the explicit crossing pattern.
class Overlay {
 public:
  Overlay(const NormalCurve& a, const NormalCurve& b);

  [[nodiscard]] int crossings() const { return static_cast<int>(crossings_.size()); }
  [[nodiscard]] int initial_crossings() const { return initial_crossings_; }
  [[nodiscard]] int bigons_removed() const { return bigons_removed_; }

  /// Removes innermost bigons until none remain.
  void reduce();

  /// True if every complementary region of a ∪ b is a disc or a once-punctured
  /// disc. Meaningful after `reduce()`.
  [[nodiscard]] bool fills() const;

 private:
  struct Crossing {
    int step_a, step_b;  // arc indices along each curve
    int rank_a, rank_b;  // order along the respective chord
  };

  void recompute();
  // Removes innermost bigons sharing no crossing; returns how many.
  int remove_bigons();
  // Position of curve c's point `pos` on edge `e` among all points on that edge.
  [[nodiscard]] int combined(int c, int e, int pos) const { return where_[c][e][pos]; }
  // Boundary parameter of a point on side `side` of triangle `t`, counted
  // counterclockwise from corner 0.
  [[nodiscard]] long boundary_param(int t, int side, int cpos) const;

  ChartPtr chart_;
  Coords w_[2];
  std::vector<PlacedArc> arcs_[2];
  std::vector<std::vector<std::pair<int, int>>> order_;   // per edge: (curve, pos) in combined order
  std::vector<std::vector<int>> where_[2];                // inverse of order_
  std::vector<Crossing> crossings_;
  std::vector<int> seq_[2];  // crossing ids in order along each curve
  int initial_crossings_ = 0;
  int bigons_removed_ = 0;
};

/// Intersection number computed by bigon reduction.
std::int64_t overlay_intersection(const NormalCurve& a, const NormalCurve& b);

/// True if a and b fill the surface (curve-graph distance at least 3).
bool fills(const NormalCurve& a, const NormalCurve& b);

}  // namespace trk
