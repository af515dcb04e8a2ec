#pragma once

#include <cstdint>
#include <span>

#include "trk/curve.hpp"

namespace trk {

/// Geometric intersection number of two traced closed normal curves.
///
/// Normal curves are reduced cyclic paths in the dual ribbon graph of the
/// triangulation. Each maximal stretch along which the two paths run side by
/// side (in either relative direction) contributes one crossing when the
/// paths enter and leave the stretch on opposite sides of each other.
/// Identical traces (up to rotation and reversal) give 0.
std::int64_t trace_intersection(std::span<const ArcStep> a, std::span<const ArcStep> b);

/// True iff the two distinct curves can be realized disjointly. Traces a + b and
/// checks that it splits into exactly the two given curves; cost is linear in
/// the total weight.
bool disjoint(const Chart& chart, std::span<const int> a, std::span<const int> b);

std::int64_t intersection_number(const NormalCurve& a, const NormalCurve& b);
std::int64_t intersection_number(const MultiCurve& a, const NormalCurve& b);
std::int64_t intersection_number(const NormalCurve& a, const MultiCurve& b);
std::int64_t intersection_number(const MultiCurve& a, const MultiCurve& b);

}  // namespace trk
