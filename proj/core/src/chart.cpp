#include "trk/chart.hpp"

#include <numeric>

namespace trk {

void require_valid(const SurfaceSig& sig) {
  if (sig.genus < 0 || sig.punctures < 1) {
    throw std::invalid_argument("surface must have genus >= 0 and at least one puncture");
  }
  if (sig.complexity() < 2) {
    throw std::invalid_argument("surface must satisfy 3g-3+m >= 2");
  }
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Chart::Chart(std::string name, int num_edges, std::vector<std::array<Side, 3>> triangles)
    : name_(std::move(name)), num_edges_(num_edges), triangles_(std::move(triangles)) {
  if (num_edges_ <= 0 || triangles_.empty()) throw std::invalid_argument("empty chart");

  std::vector<int> fwd(num_edges_, -1), bwd(num_edges_, -1);
  slots_.assign(num_edges_, {});
  for (int t = 0; t < num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const Side& s = triangles_[t][i];
      if (s.edge < 0 || s.edge >= num_edges_) throw std::invalid_argument("edge reference out of range");
      int& seen = s.forward ? fwd[s.edge] : bwd[s.edge];
      if (seen != -1) throw std::invalid_argument("edge " + std::to_string(s.edge) + " glued twice with the same orientation");
      seen = 3 * t + i;
      slots_[s.edge][s.forward ? 0 : 1] = Slot{t, i};
    }
  }
  for (int e = 0; e < num_edges_; ++e) {
    if (fwd[e] == -1 || bwd[e] == -1) {
      throw std::invalid_argument("edge " + std::to_string(e) + " must appear in exactly two slots with opposite orientation");
    }
  }

  // Nodes: 3 corners per triangle, then 2 endpoints per edge (tail, head).
  const int corners = 3 * num_triangles();
  UnionFind uf(corners + 2 * num_edges_);
  for (int t = 0; t < num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const Side& s = triangles_[t][i];
      const int tail = corners + 2 * s.edge;
      const int head = tail + 1;
      const int from = 3 * t + i;
      const int to = 3 * t + (i + 1) % 3;
      uf.unite(from, s.forward ? tail : head);
      uf.unite(to, s.forward ? head : tail);
    }
  }
  std::vector<int> label(corners + 2 * num_edges_, -1);
  corner_puncture_.resize(corners);
  for (int c = 0; c < corners; ++c) {
    int r = uf.find(c);
    if (label[r] == -1) label[r] = num_punctures_++;
    corner_puncture_[c] = label[r];
  }

  links_.assign(num_punctures_, std::vector<int>(num_edges_, 0));
  for (int e = 0; e < num_edges_; ++e) {
    links_[label[uf.find(corners + 2 * e)]][e] += 1;
    links_[label[uf.find(corners + 2 * e + 1)]][e] += 1;
  }

  const int euler = num_punctures_ - num_edges_ + num_triangles();
  if ((2 - euler) % 2 != 0 || euler > 2) throw std::invalid_argument("chart has inconsistent Euler characteristic");
  sig_ = SurfaceSig{(2 - euler) / 2, num_punctures_};
  if (sig_.expected_edges() != num_edges_ || sig_.expected_triangles() != num_triangles()) {
    throw std::invalid_argument("edge/triangle counts do not match an ideal triangulation");
  }
}

Slot Chart::across(Slot s) const {
  const auto& sl = slots_[triangles_[s.triangle][s.side].edge];
  return sl[0] == s ? sl[1] : sl[0];
}

void require_same_chart(const Chart& a, const Chart& b) {
  if (&a != &b && a.name() != b.name()) {
    throw MismatchedChart("objects live on different charts: " + a.name() + " vs " + b.name());
  }
}

// Sphere with punctures P0..P4 as two pentagons glued along their boundary.
// Edges 0-4 are the pentagon sides P_i P_{i+1}; 5,6 are the top diagonals
// P0P2, P0P3; 7,8 the bottom diagonals P0P2, P0P3. Edges point from the lower
// to the higher puncture index. See docs/charts.md.
ChartPtr chart_s05() {
  static const ChartPtr chart = std::make_shared<const Chart>(
      "s05", 9,
      std::vector<std::array<Side, 3>>{
          {{{0, true}, {1, true}, {5, false}}},   // P0 P1 P2 (top)
          {{{5, true}, {2, true}, {6, false}}},   // P0 P2 P3 (top)
          {{{6, true}, {3, true}, {4, false}}},   // P0 P3 P4 (top)
          {{{7, true}, {1, false}, {0, false}}},  // P0 P2 P1 (bottom)
          {{{8, true}, {2, false}, {7, false}}},  // P0 P3 P2 (bottom)
          {{{4, true}, {3, false}, {8, false}}},  // P0 P4 P3 (bottom)
      });
  return chart;
}

// Torus from the unit square with corners identified to P and a second
// puncture Q at the center. Edge 0 is the horizontal side, 1 the vertical
// side, 2-5 join corners A,B,C,D to Q.
ChartPtr chart_s12() {
  static const ChartPtr chart = std::make_shared<const Chart>(
      "s12", 6,
      std::vector<std::array<Side, 3>>{
          {{{0, true}, {3, true}, {2, false}}},   // A B Q
          {{{1, true}, {4, true}, {3, false}}},   // B C Q
          {{{0, false}, {5, true}, {4, false}}},  // C D Q
          {{{1, false}, {2, true}, {5, false}}},  // D A Q
      });
  return chart;
}

ChartPtr builtin_chart(const std::string& surface) {
  if (surface == "s05" || surface == "s05-chart") return chart_s05();
  if (surface == "s12" || surface == "s12-chart") return chart_s12();
  throw std::invalid_argument("unknown surface '" + surface + "' (expected s05 or s12)");
}

}  // namespace trk
