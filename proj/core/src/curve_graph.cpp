#include "trk/curve_graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>

#include "trk/enumerate.hpp"
#include "trk/intersection.hpp"
#include "trk/overlay.hpp"

namespace trk {

namespace {

std::pair<Coords, Coords> key_of(const NormalCurve& x, const NormalCurve& y) {
  return x.coords() < y.coords() ? std::pair(x.coords(), y.coords()) : std::pair(y.coords(), x.coords());
}

constexpr int kFar = std::numeric_limits<int>::max();

}  // namespace

CurveGraphIndex::CurveGraphIndex(ChartPtr chart, int bound, int radius_cap)
    : chart_(std::move(chart)), bound_(bound), cap_(radius_cap) {
  if (bound_ < 1 || cap_ < 1) throw std::invalid_argument("ConfigInvalid: bound and radius cap must be positive");
  curves_ = enumerate_curves(chart_, bound_);
  const int n = size();
  traces_.reserve(n);
  for (int i = 0; i < n; ++i) {
    id_[curves_[i].coords()] = i;
    traces_.push_back(curves_[i].trace());
  }
  adj_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (disjoint(*chart_, curves_[i].coords(), curves_[j].coords())) {
        adj_[i].push_back(j);
        adj_[j].push_back(i);
      }
    }
  }
}

std::optional<int> CurveGraphIndex::find(const NormalCurve& c) const {
  const auto it = id_.find(c.coords());
  if (it == id_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> CurveGraphIndex::neighbours_of(const NormalCurve& c) const {
  if (auto id = find(c)) return adj_[*id];
  require_same_chart(*chart_, *c.chart());
  {
    std::shared_lock lock(mutex_);
    if (auto it = nbr_cache_.find(c.coords()); it != nbr_cache_.end()) return it->second;
  }
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (disjoint(*chart_, curves_[i].coords(), c.coords())) out.push_back(i);
  }
  std::unique_lock lock(mutex_);
  nbr_cache_.emplace(c.coords(), out);
  return out;
}

std::vector<int> CurveGraphIndex::bfs(const std::vector<int>& sources) const {
  std::vector<int> dist(size(), kFar);
  std::deque<int> queue;
  for (int s : sources) {
    if (dist[s] == kFar) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (dist[u] >= cap_) continue;
    for (int v : adj_[u]) {
      if (dist[v] == kFar) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

bool CurveGraphIndex::fills(const NormalCurve& x, const NormalCurve& y) const {
  const auto key = key_of(x, y);
  {
    std::shared_lock lock(mutex_);
    if (auto it = fills_cache_.find(key); it != fills_cache_.end()) return it->second;
  }
  const bool f = trk::fills(x, y);
  std::unique_lock lock(mutex_);
  fills_cache_.emplace(key, f);
  return f;
}

Distance CurveGraphIndex::compute(const NormalCurve& x, const NormalCurve& y) const {
  if (x == y) return {0, 0, true};
  if (disjoint(*chart_, x.coords(), y.coords())) return {1, 1, true};
  if (!fills(x, y)) return {2, 2, true};
  const auto nx = neighbours_of(x);
  const auto ny = neighbours_of(y);
  const auto dist = bfs(nx);
  int best = kFar;
  for (int v : ny) {
    if (dist[v] != kFar) best = std::min(best, dist[v] + 2);
  }
  if (best > cap_) return {-1, 3, false};
  return {best, 3, best == 3};
}

Distance CurveGraphIndex::distance(const NormalCurve& x, const NormalCurve& y) const {
  require_same_chart(*x.chart(), *y.chart());
  const auto key = key_of(x, y);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Distance d = compute(x, y);
  std::unique_lock lock(mutex_);
  cache_.emplace(key, d);
  return d;
}

Distance CurveGraphIndex::distance_in_universe(const NormalCurve& x, const NormalCurve& y) const {
  if (!find(x) || !find(y)) throw GraphError("NotInUniverse");
  return distance(x, y);
}

std::optional<std::vector<NormalCurve>> CurveGraphIndex::geodesic(const NormalCurve& x, const NormalCurve& y) const {
  const Distance d = distance(x, y);
  if (!d.certified || !d.reachable()) return std::nullopt;
  if (d.value == 0) return std::vector<NormalCurve>{x};
  if (d.value == 1) return std::vector<NormalCurve>{x, y};
  const auto nx = neighbours_of(x);
  const auto ny = neighbours_of(y);
  if (d.value == 2) {
    for (int u : nx) {
      if (std::binary_search(ny.begin(), ny.end(), u)) return std::vector<NormalCurve>{x, curves_[u], y};
    }
    return std::nullopt;
  }
  // Walk back from the closest neighbour of y to the sources.
  const auto dist = bfs(nx);
  int v = -1;
  for (int c : ny) {
    if (dist[c] == d.value - 2) {
      v = c;
      break;
    }
  }
  if (v < 0) return std::nullopt;
  std::vector<NormalCurve> rev{y};
  while (true) {
    rev.push_back(curves_[v]);
    if (dist[v] == 0) break;
    for (int u : adj_[v]) {
      if (dist[u] == dist[v] - 1) {
        v = u;
        break;
      }
    }
  }
  rev.push_back(x);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::size_t CurveGraphIndex::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

Rational gromov_product(const CurveGraphIndex& g, const NormalCurve& x, const NormalCurve& y, const NormalCurve& p) {
  const Distance xp = g.distance(x, p), yp = g.distance(y, p), xy = g.distance(x, y);
  if (!xp.certified || !yp.certified || !xy.certified) throw GraphError("Unreachable: uncertified distance");
  return Rational(xp.value + yp.value - xy.value, 2);
}

int one_sided_distance(const CurveGraphIndex& g, const std::vector<NormalCurve>& a, const std::vector<NormalCurve>& b) {
  int worst = 0;
  for (const auto& p : a) {
    int best_certified = kFar;
    int best_lower = kFar;
    for (const auto& q : b) {
      const Distance d = g.distance(p, q);
      if (d.certified) {
        best_certified = std::min(best_certified, d.value);
      } else {
        best_lower = std::min(best_lower, d.lower);
      }
    }
    if (best_certified == kFar || best_certified > best_lower) throw GraphError("Unreachable: uncertified distance");
    worst = std::max(worst, best_certified);
  }
  return worst;
}

int hausdorff_distance(const CurveGraphIndex& g, const std::vector<NormalCurve>& a, const std::vector<NormalCurve>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty set");
  return std::max(one_sided_distance(g, a, b), one_sided_distance(g, b, a));
}

Rational L_a_value(const NormalCurve& gamma, const MultiCurve& alpha, const MultiCurve& beta, Rational a) {
  const std::int64_t ab = intersection_number(alpha, beta);
  if (ab == 0) throw GraphError("DegeneratePair");
  const Rational first = a * Rational(intersection_number(alpha, gamma));
  const Rational second = Rational(intersection_number(gamma, beta)) / (a * Rational(ab));
  return std::max(first, second);
}

bool in_L_a(const NormalCurve& gamma, const MultiCurve& alpha, const MultiCurve& beta, Rational a, Rational r) {
  return L_a_value(gamma, alpha, beta, a) <= r;
}

std::vector<LScanRow> scan_L(const CurveGraphIndex& g, const MultiCurve& alpha, const MultiCurve& beta, Rational r,
                             const std::vector<Rational>& a_grid) {
  if (intersection_number(alpha, beta) == 0) throw GraphError("DegeneratePair");
  std::vector<std::int64_t> ia, ib;
  for (const auto& c : g.curves()) {
    ia.push_back(intersection_number(alpha, c));
    ib.push_back(intersection_number(c, beta));
  }
  const Rational ab(intersection_number(alpha, beta));
  std::vector<LScanRow> out;
  for (const Rational& a : a_grid) {
    LScanRow row{a, {}, 0, true};
    for (int i = 0; i < g.size(); ++i) {
      const Rational v = std::max(a * Rational(ia[i]), Rational(ib[i]) / (a * ab));
      if (v <= r) row.members.push_back(g.curve(i));
    }
    for (std::size_t i = 0; i < row.members.size(); ++i) {
      for (std::size_t j = i + 1; j < row.members.size(); ++j) {
        const Distance d = g.distance(row.members[i], row.members[j]);
        if (!d.certified) row.diameter_certified = false;
        row.diameter = std::max(row.diameter, d.reachable() ? d.value : g.radius_cap() + 1);
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

DeltaEstimate delta_estimate(const CurveGraphIndex& g, const std::vector<std::array<NormalCurve, 3>>& triangles) {
  DeltaEstimate est;
  for (const auto& tri : triangles) {
    std::array<std::vector<NormalCurve>, 3> side;
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      auto path = g.geodesic(tri[k], tri[(k + 1) % 3]);
      if (!path) {
        ok = false;
      } else {
        side[k] = std::move(*path);
      }
    }
    if (!ok) {
      ++est.triangles_skipped;
      continue;
    }
    int worst = 0;
    try {
      for (int k = 0; k < 3; ++k) {
        std::vector<NormalCurve> others = side[(k + 1) % 3];
        others.insert(others.end(), side[(k + 2) % 3].begin(), side[(k + 2) % 3].end());
        worst = std::max(worst, one_sided_distance(g, side[k], others));
      }
    } catch (const GraphError&) {
      ++est.triangles_skipped;
      continue;
    }
    ++est.triangles_used;
    est.delta = std::max(est.delta, Rational(worst));
  }
  return est;
}

}  // namespace trk
