#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace trk {

/// Thrown when two objects built on different triangulations are combined.
class MismatchedChart : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Surface type S_{g,m}. Only punctured surfaces with 3g-3+m >= 2 are valid.
struct SurfaceSig {
  int genus = 0;
  int punctures = 1;

  [[nodiscard]] int complexity() const { return 3 * genus - 3 + punctures; }
  [[nodiscard]] int expected_edges() const { return 6 * genus - 6 + 3 * punctures; }
  [[nodiscard]] int expected_triangles() const { return 4 * genus - 4 + 2 * punctures; }
  [[nodiscard]] int complete_track_branches() const { return 18 * genus - 18 + 6 * punctures; }
  [[nodiscard]] int complete_track_switches() const { return 12 * genus - 12 + 4 * punctures; }

  friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;
};

/// Throws std::invalid_argument unless the signature satisfies the standing assumptions.
void require_valid(const SurfaceSig& sig);

/// One side of a triangle. Side i of a triangle runs from corner i to corner i+1
/// (counterclockwise); `forward` says whether that direction agrees with the
/// edge's own orientation.
struct Side {
  int edge = 0;
  bool forward = true;
};

/// A triangle side identified by (triangle, side index).
struct Slot {
  int triangle = 0;
  int side = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// An oriented ideal triangulation of a punctured surface.
///
/// Every edge occurs in exactly two slots, once with each orientation; slot 0 of
/// an edge is the one where it appears `forward`. Corner i of a triangle sits
/// between side i-1 and side i; punctures are the equivalence classes of
/// corners under the gluing.
class Chart {
 public:
  Chart(std::string name, int num_edges, std::vector<std::array<Side, 3>> triangles);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int num_edges() const { return num_edges_; }
  [[nodiscard]] int num_triangles() const { return static_cast<int>(triangles_.size()); }
  [[nodiscard]] int num_punctures() const { return num_punctures_; }
  [[nodiscard]] SurfaceSig signature() const { return sig_; }

  [[nodiscard]] const Side& side(int triangle, int side) const { return triangles_[triangle][side]; }
  [[nodiscard]] const std::array<Side, 3>& triangle(int t) const { return triangles_[t]; }
  [[nodiscard]] const std::array<Slot, 2>& slots(int edge) const { return slots_[edge]; }
  /// The slot on the other side of the edge that `s` lies on.
  [[nodiscard]] Slot across(Slot s) const;
  [[nodiscard]] int corner_puncture(int triangle, int corner) const { return corner_puncture_[3 * triangle + corner]; }
  /// Normal coordinates of the curve encircling puncture p.
  [[nodiscard]] const std::vector<int>& puncture_link(int p) const { return links_[p]; }

 private:
  std::string name_;
  int num_edges_;
  std::vector<std::array<Side, 3>> triangles_;
  std::vector<std::array<Slot, 2>> slots_;
  std::vector<int> corner_puncture_;
  std::vector<std::vector<int>> links_;
  int num_punctures_ = 0;
  SurfaceSig sig_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Built-in chart of the five-times punctured sphere (9 edges, 6 triangles).
ChartPtr chart_s05();
/// Built-in chart of the twice punctured torus (6 edges, 4 triangles).
ChartPtr chart_s12();
/// Looks up "s05" or "s12"; throws std::invalid_argument otherwise.
ChartPtr builtin_chart(const std::string& surface);

void require_same_chart(const Chart& a, const Chart& b);

}  // namespace trk
