#include "trk/curve.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "trk/intersection.hpp"

namespace trk {

std::array<int, 3> doubled_corner_counts(const Chart& chart, std::span<const int> coords, int t) {
  const auto& tri = chart.triangle(t);
  std::array<int, 3> x{coords[tri[0].edge], coords[tri[1].edge], coords[tri[2].edge]};
  std::array<int, 3> c{};
  for (int i = 0; i < 3; ++i) c[i] = x[(i + 2) % 3] + x[i] - x[(i + 1) % 3];
  return c;
}

bool is_admissible(const Chart& chart, std::span<const int> coords) {
  for (int t = 0; t < chart.num_triangles(); ++t) {
    for (int c : doubled_corner_counts(chart, coords, t)) {
      if (c < 0 || c % 2 != 0) return false;
    }
  }
  return true;
}

namespace {

// Moves across the arc that meets side `side` of triangle `t` at local
// position `lp` (counted from corner `side`). Returns the exit side and the
// local position there.
std::pair<int, int> cross_triangle(const Chart& chart, std::span<const int> coords, int t, int side, int lp) {
  const auto& tri = chart.triangle(t);
  const auto dc = doubled_corner_counts(chart, coords, t);
  if (lp < dc[side] / 2) {
    // Corner `side` arcs, innermost nearest the corner; they exit on side-1
    // where that corner is the far end.
    const int j = (side + 2) % 3;
    return {j, coords[tri[j].edge] - 1 - lp};
  }
  const int k = coords[tri[side].edge] - 1 - lp;
  return {(side + 1) % 3, k};
}

int to_local(const Chart& chart, std::span<const int> coords, Slot s, int global) {
  const Side& side = chart.side(s.triangle, s.side);
  return side.forward ? global : coords[side.edge] - 1 - global;
}

}  // namespace

std::vector<std::vector<PlacedArc>> trace_placed(const Chart& chart, std::span<const int> coords) {
  std::vector<std::vector<PlacedArc>> out;
  std::vector<int> offset(chart.num_edges() + 1, 0);
  for (int e = 0; e < chart.num_edges(); ++e) offset[e + 1] = offset[e] + coords[e];
  std::vector<char> seen(offset.back(), 0);

  for (int e0 = 0; e0 < chart.num_edges(); ++e0) {
    for (int p0 = 0; p0 < coords[e0]; ++p0) {
      if (seen[offset[e0] + p0]) continue;
      std::vector<PlacedArc> arcs;
      int e = e0, p = p0;
      Slot slot = chart.slots(e)[0];
      do {
        seen[offset[e] + p] = 1;
        const int lp = to_local(chart, coords, slot, p);
        auto [out_side, out_lp] = cross_triangle(chart, coords, slot.triangle, slot.side, lp);
        const Slot exit{slot.triangle, out_side};
        const int next_e = chart.side(exit.triangle, exit.side).edge;
        const int next_p = to_local(chart, coords, exit, out_lp);  // the map is an involution
        arcs.push_back({{slot.triangle, slot.side, out_side}, p, next_p});
        e = next_e;
        p = next_p;
        slot = chart.across(exit);
      } while (!(e == e0 && p == p0));
      out.push_back(std::move(arcs));
    }
  }
  return out;
}

std::vector<std::vector<ArcStep>> trace_components(const Chart& chart, std::span<const int> coords) {
  std::vector<std::vector<ArcStep>> out;
  for (const auto& comp : trace_placed(chart, coords)) {
    std::vector<ArcStep> steps;
    steps.reserve(comp.size());
    for (const auto& a : comp) steps.push_back(a.step);
    out.push_back(std::move(steps));
  }
  return out;
}

Coords coords_of_trace(const Chart& chart, std::span<const ArcStep> steps) {
  Coords v(chart.num_edges(), 0);
  for (const auto& s : steps) v[chart.side(s.triangle, s.out_side).edge] += 1;
  return v;
}

std::string_view to_string(CurveRejection r) {
  switch (r) {
    case CurveRejection::ZeroVector: return "ZeroVector";
    case CurveRejection::ParityViolation: return "ParityViolation";
    case CurveRejection::CornerNegative: return "CornerNegative";
    case CurveRejection::Disconnected: return "Disconnected";
    case CurveRejection::Peripheral: return "Peripheral";
  }
  return "?";
}

int peripheral_puncture(const Chart& chart, std::span<const int> coords) {
  for (int p = 0; p < chart.num_punctures(); ++p) {
    const auto& link = chart.puncture_link(p);
    if (std::equal(link.begin(), link.end(), coords.begin(), coords.end())) return p;
  }
  return -1;
}

std::variant<NormalCurve, CurveRejection> validate_coords(ChartPtr chart, Coords coords) {
  if (static_cast<int>(coords.size()) != chart->num_edges()) {
    throw std::invalid_argument("coordinate vector has " + std::to_string(coords.size()) + " entries, chart has " +
                                std::to_string(chart->num_edges()) + " edges");
  }
  if (std::any_of(coords.begin(), coords.end(), [](int x) { return x < 0; })) {
    throw std::invalid_argument("normal coordinates must be nonnegative");
  }
  if (std::all_of(coords.begin(), coords.end(), [](int x) { return x == 0; })) return CurveRejection::ZeroVector;
  for (int t = 0; t < chart->num_triangles(); ++t) {
    for (int c : doubled_corner_counts(*chart, coords, t)) {
      if (c % 2 != 0) return CurveRejection::ParityViolation;
    }
  }
  for (int t = 0; t < chart->num_triangles(); ++t) {
    for (int c : doubled_corner_counts(*chart, coords, t)) {
      if (c < 0) return CurveRejection::CornerNegative;
    }
  }
  if (trace_components(*chart, coords).size() != 1) return CurveRejection::Disconnected;
  if (peripheral_puncture(*chart, coords) >= 0) return CurveRejection::Peripheral;
  return NormalCurve(std::move(chart), std::move(coords));
}

NormalCurve NormalCurve::from_coords(ChartPtr chart, Coords coords) {
  auto r = validate_coords(std::move(chart), std::move(coords));
  if (auto* why = std::get_if<CurveRejection>(&r)) {
    throw std::invalid_argument("invalid normal curve: " + std::string(to_string(*why)));
  }
  return std::get<NormalCurve>(std::move(r));
}

std::vector<ArcStep> NormalCurve::trace() const { return trace_components(*chart_, coords_).front(); }

int NormalCurve::weight() const {
  int w = 0;
  for (int x : coords_) w += x;
  return w;
}

MultiCurve::MultiCurve(NormalCurve c, int weight) {
  if (weight <= 0) throw std::invalid_argument("multicurve weights must be positive");
  components_.emplace_back(std::move(c), weight);
}

MultiCurve::MultiCurve(std::vector<std::pair<NormalCurve, int>> components) : components_(std::move(components)) {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].second <= 0) throw std::invalid_argument("multicurve weights must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      require_same_chart(*components_[i].first.chart(), *components_[j].first.chart());
      if (components_[i].first == components_[j].first) throw std::invalid_argument("multicurve components repeat");
      if (intersection_number(components_[i].first, components_[j].first) != 0) {
        throw std::invalid_argument("multicurve components intersect");
      }
    }
  }
  std::sort(components_.begin(), components_.end());
}

MultiCurve MultiCurve::from_coords(const ChartPtr& chart, std::span<const int> coords, int* peripheral_weight) {
  if (static_cast<int>(coords.size()) != chart->num_edges() || !is_admissible(*chart, coords)) {
    throw std::invalid_argument("vector is not an admissible normal coordinate vector");
  }
  std::map<Coords, int> counts;
  int periph = 0;
  for (const auto& comp : trace_components(*chart, coords)) {
    Coords v = coords_of_trace(*chart, comp);
    if (peripheral_puncture(*chart, v) >= 0) {
      ++periph;
    } else {
      ++counts[std::move(v)];
    }
  }
  if (peripheral_weight) *peripheral_weight = periph;
  MultiCurve m;
  for (auto& [v, k] : counts) m.components_.emplace_back(NormalCurve::from_coords(chart, v), k);
  return m;
}

Coords MultiCurve::coords() const {
  if (components_.empty()) return {};
  Coords v(components_.front().first.coords().size(), 0);
  for (const auto& [c, k] : components_) {
    for (std::size_t e = 0; e < v.size(); ++e) v[e] += k * c.coords()[e];
  }
  return v;
}

}  // namespace trk
