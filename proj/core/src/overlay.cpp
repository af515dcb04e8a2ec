#include "trk/overlay.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace trk {

namespace {

constexpr long kSideSpan = 1L << 20;
constexpr long kPerimeter = 3 * kSideSpan;

// x strictly inside the counterclockwise arc from lo to hi.
bool inside_arc(long x, long lo, long hi) { return lo < hi ? (lo < x && x < hi) : (x > lo || x < hi); }

long ccw_distance(long from, long to) { return ((to - from) % kPerimeter + kPerimeter) % kPerimeter; }

struct Chord {
  int curve, step;
  long start, end;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Overlay::Overlay(const NormalCurve& a, const NormalCurve& b) : chart_(a.chart()) {
  require_same_chart(*a.chart(), *b.chart());
  w_[0] = a.coords();
  w_[1] = b.coords();
  arcs_[0] = trace_placed(*chart_, w_[0]).front();
  arcs_[1] = trace_placed(*chart_, w_[1]).front();
  const int ne = chart_->num_edges();
  order_.assign(ne, {});
  for (int c = 0; c < 2; ++c) where_[c].assign(ne, {});
  for (int e = 0; e < ne; ++e) {
    for (int c = 0; c < 2; ++c) {
      for (int p = 0; p < w_[c][e]; ++p) {
        where_[c][e].push_back(static_cast<int>(order_[e].size()));
        order_[e].emplace_back(c, p);
      }
    }
  }
  recompute();
  initial_crossings_ = crossings();
}

long Overlay::boundary_param(int t, int side, int cpos) const {
  const Side& s = chart_->side(t, side);
  const int len = static_cast<int>(order_[s.edge].size());
  const int local = s.forward ? cpos : len - 1 - cpos;
  return side * kSideSpan + local + 1;
}

void Overlay::recompute() {
  std::vector<std::vector<Chord>> by_triangle(chart_->num_triangles());
  for (int c = 0; c < 2; ++c) {
    for (int k = 0; k < static_cast<int>(arcs_[c].size()); ++k) {
      const PlacedArc& arc = arcs_[c][k];
      const int t = arc.step.triangle;
      const int e_in = chart_->side(t, arc.step.in_side).edge;
      const int e_out = chart_->side(t, arc.step.out_side).edge;
      by_triangle[t].push_back({c, k, boundary_param(t, arc.step.in_side, combined(c, e_in, arc.in_pos)),
                                boundary_param(t, arc.step.out_side, combined(c, e_out, arc.out_pos))});
    }
  }
  crossings_.clear();
  for (const auto& chords : by_triangle) {
    for (const Chord& x : chords) {
      if (x.curve != 0) continue;
      for (const Chord& y : chords) {
        if (y.curve != 1) continue;
        const bool u_in = inside_arc(y.start, x.start, x.end);
        if (u_in == inside_arc(y.end, x.start, x.end)) continue;
        // Disjoint chords crossing a common chord are nested; the one whose
        // endpoint comes first counterclockwise from the start is met first.
        const long key_a = ccw_distance(x.start, u_in ? y.start : y.end);
        const bool p_in = inside_arc(x.start, y.start, y.end);
        const long key_b = ccw_distance(y.start, p_in ? x.start : x.end);
        crossings_.push_back({x.step, y.step, static_cast<int>(key_a), static_cast<int>(key_b)});
      }
    }
  }
  const int n = crossings();
  for (int c = 0; c < 2; ++c) {
    seq_[c].resize(n);
    std::iota(seq_[c].begin(), seq_[c].end(), 0);
  }
  std::sort(seq_[0].begin(), seq_[0].end(), [&](int i, int j) {
    return std::pair(crossings_[i].step_a, crossings_[i].rank_a) < std::pair(crossings_[j].step_a, crossings_[j].rank_a);
  });
  std::sort(seq_[1].begin(), seq_[1].end(), [&](int i, int j) {
    return std::pair(crossings_[i].step_b, crossings_[i].rank_b) < std::pair(crossings_[j].step_b, crossings_[j].rank_b);
  });
}

int Overlay::remove_bigons() {
  const int n = crossings();
  if (n < 2) return 0;
  int removed = 0;
  std::vector<char> used(n, 0);
  std::vector<int> pos_b(n);
  for (int i = 0; i < n; ++i) pos_b[seq_[1][i]] = i;

  struct Hop {
    Slot slot;
    int edge, pos;
  };
  // Points crossed by curve a going forward from crossing x to crossing y.
  auto a_segment = [&](const Crossing& x, const Crossing& y) {
    std::vector<Hop> hops;
    if (x.step_a == y.step_a && y.rank_a > x.rank_a) return hops;
    const int len = static_cast<int>(arcs_[0].size());
    int k = x.step_a;
    do {
      const PlacedArc& arc = arcs_[0][k];
      const Slot s{arc.step.triangle, arc.step.out_side};
      hops.push_back({s, chart_->side(s.triangle, s.side).edge, arc.out_pos});
      k = (k + 1) % len;
    } while (k != y.step_a);
    return hops;
  };
  auto b_segment = [&](const Crossing& x, const Crossing& y, int dir) {
    std::vector<Hop> hops;
    const int len = static_cast<int>(arcs_[1].size());
    if (x.step_b == y.step_b && (dir > 0 ? y.rank_b > x.rank_b : y.rank_b < x.rank_b)) return hops;
    int k = x.step_b;
    do {
      const PlacedArc& arc = arcs_[1][k];
      if (dir > 0) {
        const Slot s{arc.step.triangle, arc.step.out_side};
        hops.push_back({s, chart_->side(s.triangle, s.side).edge, arc.out_pos});
      } else {
        const Slot s{arc.step.triangle, arc.step.in_side};
        hops.push_back({s, chart_->side(s.triangle, s.side).edge, arc.in_pos});
      }
      k = (k + dir + len) % len;
    } while (k != y.step_b);
    return hops;
  };

  for (int i = 0; i < n; ++i) {
    const int cx = seq_[0][i], cy = seq_[0][(i + 1) % n];
    if (used[cx] || used[cy]) continue;
    for (int dir : {1, -1}) {
      if (pos_b[cy] != (pos_b[cx] + dir + n) % n) continue;
      const Crossing& x = crossings_[cx];
      const Crossing& y = crossings_[cy];
      const auto ha = a_segment(x, y);
      const auto hb = b_segment(x, y, dir);
      if (ha.size() != hb.size()) continue;
      if (!std::equal(ha.begin(), ha.end(), hb.begin(), [](const Hop& p, const Hop& q) { return p.slot == q.slot; })) {
        continue;
      }
      if (ha.empty()) throw std::logic_error("overlay: two chords cross twice");
      for (std::size_t h = 0; h < ha.size(); ++h) {
        const int e = ha[h].edge;
        int& ia = where_[0][e][ha[h].pos];
        int& ib = where_[1][e][hb[h].pos];
        if (std::abs(ia - ib) != 1) throw std::logic_error("overlay: innermost bigon sides are not adjacent");
        std::swap(order_[e][ia], order_[e][ib]);
        std::swap(ia, ib);
      }
      used[cx] = used[cy] = 1;
      ++removed;
      break;
    }
  }
  return removed;
}

void Overlay::reduce() {
  while (true) {
    const int before = crossings();
    const int k = remove_bigons();
    if (k == 0) return;
    recompute();
    if (crossings() != before - 2 * k) throw std::logic_error("overlay: bigon removal did not remove two crossings each");
    bigons_removed_ += k;
  }
}

bool Overlay::fills() const {
  const Chart& ch = *chart_;
  const int nt = ch.num_triangles();

  int num_faces = 0;
  std::vector<int> corner_face;                           // face id -> puncture or -1
  std::map<std::pair<int, int>, std::vector<int>> seams;  // (edge, segment) -> faces
  std::vector<char> outer;

  for (int t = 0; t < nt; ++t) {
    // Boundary vertices counterclockwise: corner i, then the points on side i.
    std::vector<long> bparam;
    std::vector<int> corner_vertex(3);
    for (int i = 0; i < 3; ++i) {
      corner_vertex[i] = static_cast<int>(bparam.size());
      bparam.push_back(i * kSideSpan);
      const int len = static_cast<int>(order_[ch.side(t, i).edge].size());
      for (int l = 0; l < len; ++l) bparam.push_back(i * kSideSpan + l + 1);
    }
    const int nb = static_cast<int>(bparam.size());
    auto vertex_of = [&](long param) {
      return static_cast<int>(std::lower_bound(bparam.begin(), bparam.end(), param) - bparam.begin());
    };

    std::vector<Chord> chords;
    for (int c = 0; c < 2; ++c) {
      for (int k = 0; k < static_cast<int>(arcs_[c].size()); ++k) {
        const PlacedArc& arc = arcs_[c][k];
        if (arc.step.triangle != t) continue;
        const int e_in = ch.side(t, arc.step.in_side).edge;
        const int e_out = ch.side(t, arc.step.out_side).edge;
        chords.push_back({c, k, boundary_param(t, arc.step.in_side, combined(c, e_in, arc.in_pos)),
                          boundary_param(t, arc.step.out_side, combined(c, e_out, arc.out_pos))});
      }
    }

    // Crossing vertices, and per chord the ordered list of vertices along it.
    std::vector<std::vector<std::pair<long, int>>> along(chords.size());
    struct CrossInfo {
      int chord_a, chord_b;
      bool u_is_start;
    };
    std::vector<CrossInfo> info;
    for (std::size_t x = 0; x < chords.size(); ++x) {
      if (chords[x].curve != 0) continue;
      for (std::size_t y = 0; y < chords.size(); ++y) {
        if (chords[y].curve != 1) continue;
        const Chord& A = chords[x];
        const Chord& B = chords[y];
        const bool u_in = inside_arc(B.start, A.start, A.end);
        if (u_in == inside_arc(B.end, A.start, A.end)) continue;
        const int v = nb + static_cast<int>(info.size());
        info.push_back({static_cast<int>(x), static_cast<int>(y), u_in});
        along[x].emplace_back(ccw_distance(A.start, u_in ? B.start : B.end), v);
        const bool p_in = inside_arc(A.start, B.start, B.end);
        along[y].emplace_back(ccw_distance(B.start, p_in ? A.start : A.end), v);
      }
    }
    const int nv = nb + static_cast<int>(info.size());
    std::vector<std::vector<int>> rot(nv);
    // Per chord: full vertex path start..end.
    std::vector<std::vector<int>> path(chords.size());
    for (std::size_t x = 0; x < chords.size(); ++x) {
      std::sort(along[x].begin(), along[x].end());
      path[x].push_back(vertex_of(chords[x].start));
      for (auto& [key, v] : along[x]) path[x].push_back(v);
      path[x].push_back(vertex_of(chords[x].end));
    }
    std::vector<int> chord_nbr(nb, -1);
    for (std::size_t x = 0; x < chords.size(); ++x) {
      chord_nbr[path[x].front()] = path[x][1];
      chord_nbr[path[x].back()] = path[x][path[x].size() - 2];
    }
    for (int v = 0; v < nb; ++v) {
      const int next = (v + 1) % nb, prev = (v + nb - 1) % nb;
      if (chord_nbr[v] >= 0) {
        rot[v] = {next, chord_nbr[v], prev};
      } else {
        rot[v] = {next, prev};
      }
    }
    auto neighbours = [&](int chord, int v) {
      const auto& p = path[chord];
      const auto it = std::find(p.begin(), p.end(), v);
      return std::pair(*(it - 1), *(it + 1));  // (toward start, toward end)
    };
    for (std::size_t c = 0; c < info.size(); ++c) {
      const int v = nb + static_cast<int>(c);
      auto [to_p, to_q] = neighbours(info[c].chord_a, v);
      auto [b_back, b_fwd] = neighbours(info[c].chord_b, v);
      const int to_u = info[c].u_is_start ? b_back : b_fwd;
      const int to_v = info[c].u_is_start ? b_fwd : b_back;
      rot[v] = {to_p, to_u, to_q, to_v};
    }

    // Trace faces (face on the left of each half-edge).
    std::vector<std::vector<int>> face_of(nv);
    for (int v = 0; v < nv; ++v) face_of[v].assign(rot[v].size(), -1);
    for (int v0 = 0; v0 < nv; ++v0) {
      for (std::size_t j0 = 0; j0 < rot[v0].size(); ++j0) {
        if (face_of[v0][j0] >= 0) continue;
        const int f = num_faces++;
        bool is_outer = false;
        int v = v0;
        std::size_t j = j0;
        do {
          face_of[v][j] = f;
          const int u = v;
          const int w = rot[v][j];
          if (u < nb && j + 1 == rot[u].size()) is_outer = true;
          const auto& rw = rot[w];
          const std::size_t back = std::find(rw.begin(), rw.end(), u) - rw.begin();
          j = (back + rw.size() - 1) % rw.size();
          v = w;
        } while (!(v == v0 && j == j0));
        outer.push_back(is_outer);
        corner_face.push_back(-1);
      }
    }
    for (int i = 0; i < 3; ++i) {
      const int cv = corner_vertex[i];
      corner_face[face_of[cv][0]] = ch.corner_puncture(t, i);
      const Side& s = ch.side(t, i);
      const int len = static_cast<int>(order_[s.edge].size());
      for (int seg = 0; seg <= len; ++seg) {
        const int from = cv + seg;
        const int global = s.forward ? seg : len - seg;
        seams[{s.edge, global}].push_back(face_of[from][0]);
      }
    }
  }

  UnionFind uf(num_faces);
  for (const auto& [key, faces] : seams) {
    if (faces.size() != 2) throw std::logic_error("overlay: seam not shared by two faces");
    uf.unite(faces[0], faces[1]);
  }
  std::map<int, long> chi;
  std::map<int, std::set<int>> punct;
  for (int f = 0; f < num_faces; ++f) {
    if (outer[f]) continue;
    chi[uf.find(f)] += 1;
    if (corner_face[f] >= 0) punct[uf.find(f)].insert(corner_face[f]);
  }
  for (const auto& [key, faces] : seams) chi[uf.find(faces[0])] -= 1;
  for (const auto& [root, x] : chi) {
    const std::size_t np = punct.count(root) ? punct[root].size() : 0;
    const bool disc = x == 1 && np == 0;
    const bool punctured_disc = x == 0 && np == 1;
    if (!disc && !punctured_disc) return false;
  }
  return true;
}

std::int64_t overlay_intersection(const NormalCurve& a, const NormalCurve& b) {
  Overlay o(a, b);
  o.reduce();
  return o.crossings();
}

bool fills(const NormalCurve& a, const NormalCurve& b) {
  if (a == b) return false;
  Overlay o(a, b);
  o.reduce();
  if (o.crossings() == 0) return false;
  return o.fills();
}

}  // namespace trk
