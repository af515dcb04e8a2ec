#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "trk/chart.hpp"

namespace trk {

using Coords = std::vector<int>;

/// One normal arc of a traced curve: it enters `triangle` through `in_side`
/// and leaves through `out_side`.
struct ArcStep {
  int triangle = 0;
  int in_side = 0;
  int out_side = 0;
  friend bool operator==(const ArcStep&, const ArcStep&) = default;
};

/// Corner arc counts of one triangle; corner i lies between side i-1 and side i.
/// Entries may be negative or half-integral (returned doubled) for invalid input.
std::array<int, 3> doubled_corner_counts(const Chart& chart, std::span<const int> coords, int triangle);

/// True when every triangle has even weight sum and nonnegative corner counts.
bool is_admissible(const Chart& chart, std::span<const int> coords);

/// A traced arc together with the global positions (along the edge's own
/// orientation) of its entry and exit points.
struct PlacedArc {
  ArcStep step;
  int in_pos = 0;
  int out_pos = 0;
};

std::vector<std::vector<PlacedArc>> trace_placed(const Chart& chart, std::span<const int> coords);

/// Traces every component of an admissible coordinate vector. Each component
/// is a cyclic list of arcs, starting from the lowest (edge, position) it meets.
std::vector<std::vector<ArcStep>> trace_components(const Chart& chart, std::span<const int> coords);

/// Edge-weight vector of a traced component.
Coords coords_of_trace(const Chart& chart, std::span<const ArcStep> steps);

enum class CurveRejection { ZeroVector, ParityViolation, CornerNegative, Disconnected, Peripheral };

std::string_view to_string(CurveRejection r);

/// An essential, non-peripheral simple closed curve, stored by its normal
/// coordinates. Two curves are equal iff their coordinate vectors are equal.
class NormalCurve {
 public:
  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] const Coords& coords() const { return coords_; }
  [[nodiscard]] std::vector<ArcStep> trace() const;
  [[nodiscard]] int weight() const;

  /// Validates; throws std::invalid_argument naming the rejection reason.
  static NormalCurve from_coords(ChartPtr chart, Coords coords);

  friend bool operator==(const NormalCurve& a, const NormalCurve& b) { return a.coords_ == b.coords_; }
  friend auto operator<=>(const NormalCurve& a, const NormalCurve& b) { return a.coords_ <=> b.coords_; }

 private:
  friend std::variant<NormalCurve, CurveRejection> validate_coords(ChartPtr, Coords);
  NormalCurve(ChartPtr chart, Coords coords) : chart_(std::move(chart)), coords_(std::move(coords)) {}

  ChartPtr chart_;
  Coords coords_;
};

/// Returns the curve, or the first violated condition in the order
/// ZeroVector, ParityViolation, CornerNegative, Disconnected, Peripheral.
/// Throws std::invalid_argument for a wrong-length or negative vector.
std::variant<NormalCurve, CurveRejection> validate_coords(ChartPtr chart, Coords coords);

/// Index of the puncture whose link has these coordinates, or -1.
int peripheral_puncture(const Chart& chart, std::span<const int> coords);

/// Weighted union of pairwise disjoint, pairwise distinct curves.
class MultiCurve {
 public:
  MultiCurve() = default;
  explicit MultiCurve(NormalCurve c, int weight = 1);
  /// Throws std::invalid_argument if components intersect or repeat, or if a weight is not positive.
  explicit MultiCurve(std::vector<std::pair<NormalCurve, int>> components);

  /// Decomposes an admissible vector into its components. Peripheral components
  /// are reported through `peripheral_weight` and otherwise dropped.
  static MultiCurve from_coords(const ChartPtr& chart, std::span<const int> coords, int* peripheral_weight = nullptr);

  [[nodiscard]] const std::vector<std::pair<NormalCurve, int>>& components() const { return components_; }
  [[nodiscard]] bool empty() const { return components_.empty(); }
  [[nodiscard]] Coords coords() const;

 private:
  std::vector<std::pair<NormalCurve, int>> components_;
};

}  // namespace trk
