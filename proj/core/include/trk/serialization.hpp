#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trk/adapted.hpp"
#include "trk/chart.hpp"
#include "trk/curve.hpp"
#include "trk/split.hpp"
#include "trk/train_track.hpp"
#include "trk/vertex_cycles.hpp"

namespace trk {

using Json = nlohmann::json;

class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "p/q", or "p" when q = 1.
std::string rational_string(const Rational& r);
Rational parse_rational(const std::string& s);

/// Signed edge reference: e for a forward side or crossing, -(e+1) otherwise.
int edge_ref(int edge, bool forward);

/// {name, edges: [0..n), triangles: [[ref, ref, ref], ...]}
Json chart_to_json(const Chart& chart);
ChartPtr chart_from_json(const Json& j);

/// {chart: name, coords: [...]}
Json curve_to_json(const NormalCurve& c);
/// Resolves the chart by name when `chart` is null (built-in charts only).
NormalCurve curve_from_json(const Json& j, ChartPtr chart = nullptr);

/// {chart, switches: [{sideA, sideB}], branches: [[2b, 2b+1]], realization: {"b": [ref...]}}
Json track_to_json(const TrainTrack& t);
TrainTrack track_from_json(const Json& j, ChartPtr chart = nullptr);

/// {branch, dir: "L" | "R" | "C"}
Json move_to_json(const SplitMove& m);
SplitMove move_from_json(const Json& j);

/// [{measure, curve}]
Json vertex_cycles_to_json(const std::vector<VertexCycle>& cycles);

/// {name, chart, track, pants: [curve], markers, large, connectors}
Json adapted_to_json(const AdaptedTrack& at);

Json measure_to_json(const Measure& mu);
Measure measure_from_json(const Json& j);

}  // namespace trk
