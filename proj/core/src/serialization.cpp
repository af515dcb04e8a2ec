#include "trk/serialization.hpp"

#include <charconv>

namespace trk {

std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  auto parse = [&](std::string_view v) {
    std::int64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw SerializationError("bad rational '" + s + "'");
    return x;
  };
  const auto slash = s.find('/');
  const std::string_view sv(s);
  if (slash == std::string::npos) return Rational(parse(sv));
  const std::int64_t q = parse(sv.substr(slash + 1));
  if (q == 0) throw SerializationError("zero denominator in '" + s + "'");
  return Rational(parse(sv.substr(0, slash)), q);
}

int edge_ref(int edge, bool forward) { return forward ? edge : -(edge + 1); }

namespace {

std::pair<int, bool> decode_ref(int ref) { return ref >= 0 ? std::pair(ref, true) : std::pair(-ref - 1, false); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SerializationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

ChartPtr resolve_chart(const Json& j, ChartPtr chart) {
  if (chart) {
    if (j.contains("chart") && j.at("chart").is_string() && j.at("chart").get<std::string>() != chart->name()) {
      throw MismatchedChart("document is on chart " + j.at("chart").get<std::string>() + ", expected " + chart->name());
    }
    return chart;
  }
  const Json& c = field(j, "chart");
  if (c.is_object()) return chart_from_json(c);
  try {
    return builtin_chart(c.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SerializationError(e.what());
  }
}

}  // namespace

Json chart_to_json(const Chart& chart) {
  Json edges = Json::array();
  for (int e = 0; e < chart.num_edges(); ++e) edges.push_back(e);
  Json tris = Json::array();
  for (int t = 0; t < chart.num_triangles(); ++t) {
    Json tri = Json::array();
    for (const Side& s : chart.triangle(t)) tri.push_back(edge_ref(s.edge, s.forward));
    tris.push_back(std::move(tri));
  }
  return {{"name", chart.name()}, {"edges", edges}, {"triangles", tris}};
}

ChartPtr chart_from_json(const Json& j) {
  try {
    const auto name = j.value("name", std::string("custom"));
    const int ne = static_cast<int>(field(j, "edges").size());
    std::vector<std::array<Side, 3>> tris;
    for (const auto& tri : field(j, "triangles")) {
      if (tri.size() != 3) throw SerializationError("triangle without three sides");
      std::array<Side, 3> sides;
      for (int k = 0; k < 3; ++k) {
        const auto [e, fwd] = decode_ref(tri.at(k).get<int>());
        sides[k] = {e, fwd};
      }
      tris.push_back(sides);
    }
    auto chart = std::make_shared<const Chart>(name, ne, std::move(tris));
    // Built-in names map back to the shared built-in instance when the gluing agrees.
    if (name == "s05" || name == "s12") {
      ChartPtr b = builtin_chart(name);
      if (chart_to_json(*b) == chart_to_json(*chart)) return b;
    }
    return chart;
  } catch (const Json::exception& e) {
    throw SerializationError(std::string("chart: ") + e.what());
  }
}

Json curve_to_json(const NormalCurve& c) { return {{"chart", c.chart()->name()}, {"coords", c.coords()}}; }

NormalCurve curve_from_json(const Json& j, ChartPtr chart) {
  chart = resolve_chart(j, std::move(chart));
  try {
    return NormalCurve::from_coords(chart, field(j, "coords").get<Coords>());
  } catch (const Json::exception& e) {
    throw SerializationError(std::string("curve: ") + e.what());
  }
}

Json track_to_json(const TrainTrack& t) {
  Json sws = Json::array();
  for (const auto& s : t.switches()) sws.push_back({{"sideA", s.sides[0]}, {"sideB", s.sides[1]}});
  Json branches = Json::array();
  Json real = Json::object();
  for (int b = 0; b < t.num_branches(); ++b) {
    branches.push_back({2 * b, 2 * b + 1});
    Json w = Json::array();
    for (const auto& c : t.word(b)) w.push_back(edge_ref(c.edge, c.forward));
    real[std::to_string(b)] = std::move(w);
  }
  return {{"chart", t.chart()->name()}, {"switches", sws}, {"branches", branches}, {"realization", real}};
}

TrainTrack track_from_json(const Json& j, ChartPtr chart) {
  chart = resolve_chart(j, std::move(chart));
  try {
    std::vector<Switch> sws;
    for (const auto& s : field(j, "switches")) {
      Switch sw;
      sw.sides[0] = field(s, "sideA").get<std::vector<int>>();
      sw.sides[1] = field(s, "sideB").get<std::vector<int>>();
      sws.push_back(std::move(sw));
    }
    const auto& branches = field(j, "branches");
    const auto& real = field(j, "realization");
    std::vector<Word> words;
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const auto hb = branches.at(b).get<std::vector<int>>();
      if (hb != std::vector<int>{2 * static_cast<int>(b), 2 * static_cast<int>(b) + 1}) {
        throw SerializationError("branch " + std::to_string(b) + " must have half-branches [2b, 2b+1]");
      }
      Word w;
      for (int ref : field(real, std::to_string(b).c_str())) {
        const auto [e, fwd] = decode_ref(ref);
        w.push_back({e, fwd});
      }
      words.push_back(std::move(w));
    }
    return TrainTrack(chart, std::move(sws), std::move(words));
  } catch (const Json::exception& e) {
    throw SerializationError(std::string("track: ") + e.what());
  }
}

Json move_to_json(const SplitMove& m) { return {{"branch", m.branch}, {"dir", std::string(to_string(m.dir))}}; }

SplitMove move_from_json(const Json& j) {
  try {
    return {field(j, "branch").get<int>(), split_dir_from_string(field(j, "dir").get<std::string>())};
  } catch (const Json::exception& e) {
    throw SerializationError(std::string("move: ") + e.what());
  }
}

Json vertex_cycles_to_json(const std::vector<VertexCycle>& cycles) {
  Json out = Json::array();
  for (const auto& v : cycles) out.push_back({{"measure", v.measure}, {"curve", curve_to_json(v.curve)}});
  return out;
}

Json adapted_to_json(const AdaptedTrack& at) {
  Json pants = Json::array();
  for (const auto& p : at.pants) pants.push_back(curve_to_json(p));
  return {{"name", at.name},
          {"chart", chart_to_json(*at.track.chart())},
          {"track", track_to_json(at.track)},
          {"pants", pants},
          {"pantsMeasures", at.pants_measures},
          {"markers", at.marker},
          {"large", at.large},
          {"connectors", at.connector}};
}

Json measure_to_json(const Measure& mu) { return Json(mu); }

Measure measure_from_json(const Json& j) {
  try {
    return j.get<Measure>();
  } catch (const Json::exception& e) {
    throw SerializationError(std::string("measure: ") + e.what());
  }
}

}  // namespace trk
