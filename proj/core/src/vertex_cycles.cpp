#include "trk/vertex_cycles.hpp"

#include <algorithm>

#include "trk/cone.hpp"
#include "trk/intersection.hpp"

namespace trk {

std::vector<std::vector<BranchVisit>> trainpath_cycles(const TrainTrack& t, std::span<const std::int64_t> mu) {
  if (static_cast<int>(mu.size()) != t.num_branches()) throw TrackError("IndexMismatch");
  if (!t.check_switch_conditions(mu)) throw TrackError("switch conditions fail");
  const int nb = t.num_branches();
  std::vector<std::int64_t> offset(2 * nb, 0);
  for (const auto& s : t.switches()) {
    for (const auto& side : s.sides) {
      std::int64_t acc = 0;
      for (int h : side) {
        offset[h] = acc;
        acc += mu[h / 2];
      }
    }
  }
  auto side_total = [&](int sw, int side) {
    std::int64_t acc = 0;
    for (int h : t.sw(sw).sides[side]) acc += mu[h / 2];
    return acc;
  };

  std::vector<std::vector<char>> used(nb);
  for (int b = 0; b < nb; ++b) used[b].assign(static_cast<std::size_t>(mu[b]), 0);

  std::vector<std::vector<BranchVisit>> cycles;
  for (int b0 = 0; b0 < nb; ++b0) {
    for (std::int64_t k0 = 0; k0 < mu[b0]; ++k0) {
      if (used[b0][k0]) continue;
      std::vector<BranchVisit> cycle;
      int h = 2 * b0;
      std::int64_t k = k0;
      do {
        const int b = h / 2;
        const std::int64_t start_index = h % 2 == 0 ? k : mu[b] - 1 - k;
        used[b][start_index] = 1;
        cycle.push_back({b, h % 2 == 0});
        const int arrive = h ^ 1;
        const std::int64_t at = mu[b] - 1 - k;
        const HalfPlace& p = t.place(arrive);
        const std::int64_t pos = offset[arrive] + at;
        const int other = 1 - p.side;
        const std::int64_t mirrored = side_total(p.sw, other) - 1 - pos;
        int next = -1;
        for (int x : t.sw(p.sw).sides[other]) {
          if (mirrored >= offset[x] && mirrored < offset[x] + mu[x / 2]) next = x;
        }
        if (next < 0) throw TrackError("trainpath: strand leaves the track");
        h = next;
        k = mirrored - offset[next];
      } while (!(h == 2 * b0 && k == k0));
      cycles.push_back(std::move(cycle));
    }
  }
  return cycles;
}

bool passes_at_most_twice_opposite(const TrainTrack& t, std::span<const std::int64_t> mu) {
  const auto cycles = trainpath_cycles(t, mu);
  if (cycles.size() != 1) throw TrackError("NotConnectedTrainpath");
  std::vector<int> fwd(t.num_branches(), 0), bwd(t.num_branches(), 0);
  for (const auto& v : cycles.front()) (v.forward ? fwd : bwd)[v.branch] += 1;
  for (int b = 0; b < t.num_branches(); ++b) {
    if (fwd[b] > 1 || bwd[b] > 1) return false;
  }
  return true;
}

bool is_vertex_cycle_by_trainpath(const TrainTrack& t, std::span<const std::int64_t> mu) {
  if (!passes_at_most_twice_opposite(t, mu)) return false;
  const auto path = trainpath_cycles(t, mu).front();
  const int n = static_cast<int>(path.size());
  auto doubled = [&](int i) { return mu[path[((i % n) + n) % n].branch] == 2; };
  int start = -1;
  for (int i = 0; i < n && start < 0; ++i) {
    if (doubled(i) && !doubled(i - 1)) start = i;
  }
  if (start < 0) return std::none_of(mu.begin(), mu.end(), [](std::int64_t x) { return x == 2; });
  std::vector<std::vector<BranchVisit>> runs;
  for (int i = start; i < start + n; ++i) {
    if (!doubled(i)) continue;
    if (!doubled(i - 1)) runs.emplace_back();
    runs.back().push_back(path[i % n]);
  }
  if (runs.size() != 2 || runs[0].size() != runs[1].size()) return false;
  const std::size_t m = runs[0].size();
  for (std::size_t k = 0; k < m; ++k) {
    const BranchVisit& a = runs[0][k];
    const BranchVisit& b = runs[1][m - 1 - k];
    if (a.branch != b.branch || a.forward == b.forward) return false;
  }
  return true;
}

std::vector<Measure> trainpath_candidate_measures(const TrainTrack& t) {
  const int nb = t.num_branches();
  std::vector<std::vector<int>> closes(nb);
  for (int s = 0; s < t.num_switches(); ++s) {
    int top = 0;
    for (const auto& side : t.sw(s).sides) {
      for (int h : side) top = std::max(top, h / 2);
    }
    closes[top].push_back(s);
  }
  std::vector<Measure> out;
  Measure mu(nb, 0);
  auto dfs = [&](auto&& self, int b) -> void {
    if (b == nb) {
      if (std::all_of(mu.begin(), mu.end(), [](std::int64_t x) { return x == 0; })) return;
      if (trainpath_cycles(t, mu).size() != 1) return;
      if (passes_at_most_twice_opposite(t, mu)) out.push_back(mu);
      return;
    }
    for (int x = 0; x <= 2; ++x) {
      mu[b] = x;
      bool ok = true;
      for (int s : closes[b]) {
        std::int64_t d = 0;
        for (int h : t.sw(s).sides[1]) d += mu[h / 2];
        for (int h : t.sw(s).sides[0]) d -= mu[h / 2];
        ok = ok && d == 0;
      }
      if (ok) self(self, b + 1);
    }
    mu[b] = 0;
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Measure> trainpath_vertex_measures(const TrainTrack& t) {
  std::vector<Measure> out = trainpath_candidate_measures(t);
  std::erase_if(out, [&](const Measure& mu) { return !is_vertex_cycle_by_trainpath(t, mu); });
  return out;
}

std::vector<Measure> extreme_ray_measures(const TrainTrack& t) { return extreme_rays(t.switch_rows(), t.num_branches()); }

std::vector<VertexCycle> vertex_cycles(const TrainTrack& t) {
  std::vector<VertexCycle> out;
  for (auto& m : extreme_ray_measures(t)) {
    auto r = validate_coords(t.chart(), t.pushforward(m));
    if (auto* why = std::get_if<CurveRejection>(&r)) {
      throw TrackError("RealizationFailure: vertex cycle pushes forward to " + std::string(to_string(*why)));
    }
    out.push_back({std::move(m), std::get<NormalCurve>(std::move(r))});
  }
  return out;
}

NormalCurve phi(const TrainTrack& t, const std::vector<VertexCycle>& cycles) {
  if (cycles.empty()) throw TrackError("NoVertexCycles");
  const auto perm = t.canonical().perm;
  std::size_t best = 0;
  Measure best_key;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    Measure key(perm.size());
    for (std::size_t b = 0; b < perm.size(); ++b) key[perm[b]] = cycles[i].measure[b];
    if (i == 0 || key < best_key) {
      best = i;
      best_key = std::move(key);
    }
  }
  return cycles[best].curve;
}

NormalCurve phi(const TrainTrack& t) { return phi(t, vertex_cycles(t)); }

MassBoundCheck mass_bound_check(const TrainTrack& t, std::span<const std::int64_t> mu, const MultiCurve& c,
                              const std::vector<VertexCycle>& cycles) {
  if (static_cast<int>(mu.size()) != t.num_branches()) throw TrackError("IndexMismatch");
  MassBoundCheck r;
  r.bound = 2 * total_mass(mu);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const std::int64_t x = intersection_number(c, cycles[i].curve);
    if (r.witness < 0 || x > r.max_intersection) {
      r.max_intersection = x;
      r.witness = static_cast<int>(i);
    }
  }
  r.ok = r.max_intersection <= r.bound;
  return r;
}

}  // namespace trk
