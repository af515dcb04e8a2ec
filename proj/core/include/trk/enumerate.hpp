#pragma once

#include <vector>

#include "trk/curve.hpp"

namespace trk {

/// All valid curves with every coordinate at most `bound`, sorted by
/// coordinate vector. Empty for bound < 1.
std::vector<NormalCurve> enumerate_curves(const ChartPtr& chart, int bound);

}  // namespace trk
