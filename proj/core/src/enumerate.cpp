#include "trk/enumerate.hpp"

#include <algorithm>

namespace trk {

std::vector<NormalCurve> enumerate_curves(const ChartPtr& chart, int bound) {
  std::vector<NormalCurve> out;
  if (bound < 1) return out;
  const int ne = chart->num_edges();

  // Triangles become checkable once their highest edge is assigned.
  std::vector<std::vector<int>> closes(ne);
  for (int t = 0; t < chart->num_triangles(); ++t) {
    const auto& tri = chart->triangle(t);
    closes[std::max({tri[0].edge, tri[1].edge, tri[2].edge})].push_back(t);
  }

  Coords v(ne, 0);
  auto dfs = [&](auto&& self, int e) -> void {
    if (e == ne) {
      auto r = validate_coords(chart, v);
      if (auto* c = std::get_if<NormalCurve>(&r)) out.push_back(std::move(*c));
      return;
    }
    for (int x = 0; x <= bound; ++x) {
      v[e] = x;
      bool ok = true;
      for (int t : closes[e]) {
        for (int c : doubled_corner_counts(*chart, v, t)) ok = ok && c >= 0 && c % 2 == 0;
      }
      if (ok) self(self, e + 1);
    }
    v[e] = 0;
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace trk
