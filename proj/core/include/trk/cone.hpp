#pragma once

#include <cstdint>
#include <vector>

namespace trk {

using IntVec = std::vector<std::int64_t>;

/// Extreme rays of {x >= 0 : rows . x = 0} by the double description method,
/// each scaled to a primitive integer vector, sorted lexicographically.
/// Throws std::overflow_error if an intermediate entry leaves int64 range.
std::vector<IntVec> extreme_rays(const std::vector<IntVec>& rows, int dim);

/// Divides by the gcd of the entries (no-op for the zero vector).
void make_primitive(IntVec& v);

}  // namespace trk
