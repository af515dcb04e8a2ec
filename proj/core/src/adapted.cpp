#include "trk/adapted.hpp"

#include <algorithm>
#include <map>

#include "trk/split.hpp"
#include "trk/vertex_cycles.hpp"

namespace trk {

namespace {

struct Proto {
  struct Branch {
    int start, end;  // half ids
    Word word;
    bool alive = true;
  };
  std::vector<Branch> branches;
  std::vector<Switch> switches;  // sides hold half ids
  std::vector<char> switch_alive;
  int next_half = 0;

  int add_branch(Word w) {
    branches.push_back({next_half, next_half + 1, std::move(w)});
    next_half += 2;
    return static_cast<int>(branches.size()) - 1;
  }

  int owner(int half) const {
    for (int b = 0; b < static_cast<int>(branches.size()); ++b) {
      if (branches[b].alive && (branches[b].start == half || branches[b].end == half)) return b;
    }
    throw TrackError("combed track: dangling half-branch");
  }

  void drop_branch(int b) {
    branches[b].alive = false;
    for (auto& s : switches) {
      for (auto& side : s.sides) {
        std::erase(side, branches[b].start);
        std::erase(side, branches[b].end);
      }
    }
  }

  void reverse_branch(Branch& br) {
    std::swap(br.start, br.end);
    br.word = reversed(br.word);
  }

  // Replaces a switch with one half on each side by a single branch.
  void smooth(int s) {
    const int x = switches[s].sides[0].front();
    const int y = switches[s].sides[1].front();
    const int p = owner(x), q = owner(y);
    if (p == q) throw TrackError("combed track: smoothing would close a loop");
    if (branches[p].end != x) reverse_branch(branches[p]);
    if (branches[q].start != y) reverse_branch(branches[q]);
    branches[p].word.insert(branches[p].word.end(), branches[q].word.begin(), branches[q].word.end());
    branches[p].end = branches[q].end;
    branches[q].alive = false;
    switch_alive[s] = 0;
  }

  TrainTrack build(const ChartPtr& chart) const {
    std::map<int, int> relabel;
    std::vector<Word> words;
    for (const auto& br : branches) {
      if (!br.alive) continue;
      const int b = static_cast<int>(words.size());
      relabel[br.start] = 2 * b;
      relabel[br.end] = 2 * b + 1;
      words.push_back(br.word);
    }
    std::vector<Switch> sws;
    for (std::size_t s = 0; s < switches.size(); ++s) {
      if (!switch_alive[s]) continue;
      Switch out;
      for (int k = 0; k < 2; ++k) {
        for (int h : switches[s].sides[k]) out.sides[k].push_back(relabel.at(h));
      }
      sws.push_back(std::move(out));
    }
    return TrainTrack(chart, std::move(sws), std::move(words));
  }
};

}  // namespace

TrainTrack combed_track(const ChartPtr& chart, const std::vector<CornerRef>& dropped) {
  Proto p;
  const int nt = chart->num_triangles();
  // Switch 3t+i sits next to side i of triangle t.
  p.switches.assign(3 * nt, Switch{});
  p.switch_alive.assign(3 * nt, 1);
  for (int e = 0; e < chart->num_edges(); ++e) {
    const int b = p.add_branch({{e, true}});
    const Slot s0 = chart->slots(e)[0], s1 = chart->slots(e)[1];
    p.switches[3 * s0.triangle + s0.side].sides[1].push_back(p.branches[b].start);
    p.switches[3 * s1.triangle + s1.side].sides[1].push_back(p.branches[b].end);
  }
  std::vector<int> corner_branch(3 * nt);
  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) corner_branch[3 * t + k] = p.add_branch({});
  }
  // Looking into the triangle from side i, corner i is on the left.
  for (int t = 0; t < nt; ++t) {
    for (int i = 0; i < 3; ++i) {
      auto& neg = p.switches[3 * t + i].sides[0];
      neg.push_back(p.branches[corner_branch[3 * t + i]].end);
      neg.push_back(p.branches[corner_branch[3 * t + (i + 1) % 3]].start);
    }
  }
  for (const auto& c : dropped) p.drop_branch(corner_branch[3 * c.triangle + c.corner]);
  for (int s = 0; s < 3 * nt; ++s) {
    const auto& sd = p.switches[s].sides;
    if (sd[0].size() == 1 && sd[1].size() == 1) p.smooth(s);
  }
  return p.build(chart);
}

namespace {

struct AdaptedSpec {
  const char* name;
  ChartPtr (*chart)();
  std::vector<CornerRef> dropped;
  std::vector<SplitMove> splits;  // applied to the combed track
  std::vector<Coords> pants;
  std::vector<int> marker;
  std::vector<int> large;
};

// The combed tracks carry the pants curves but not in twist-connector form;
// a few splits bring each pants curve into an annulus with a large branch
// whose residual weight counts intersections with the pants curve.
const std::vector<AdaptedSpec>& specs() {
  static const std::vector<AdaptedSpec> all{
      {"s05",
       chart_s05,
       {{1, 0}, {3, 2}, {0, 2}, {2, 1}, {5, 1}},
       {{0, SplitDir::Left}, {1, SplitDir::Left}, {5, SplitDir::Left}, {3, SplitDir::Right}},
       {{0, 0, 1, 0, 1, 0, 1, 0, 1}, {1, 0, 1, 0, 0, 1, 0, 1, 0}},
       {4, 5},
       {2, 9}},
      {"s12",
       chart_s12,
       {{0, 1}, {1, 2}},
       {{1, SplitDir::Right}, {2, SplitDir::Left}, {3, SplitDir::Right}, {7, SplitDir::Right}},
       {{1, 1, 1, 0, 1, 2}, {2, 2, 2, 0, 2, 2}},
       {7, 6},
       {11, 0}},
  };
  return all;
}

AdaptedTrack build(const AdaptedSpec& spec) {
  const ChartPtr chart = spec.chart();
  TrainTrack t = combed_track(chart, spec.dropped);
  for (const auto& m : spec.splits) t = split(t, m).track;

  AdaptedTrack at{spec.name, t, {}, {}, spec.large, spec.marker, {}};
  const auto cycles = vertex_cycles(t);
  for (std::size_t i = 0; i < spec.pants.size(); ++i) {
    const auto it = std::find_if(cycles.begin(), cycles.end(),
                                 [&](const VertexCycle& v) { return v.curve.coords() == spec.pants[i]; });
    if (it == cycles.end()) throw std::logic_error("adapted track: pants curve is not a vertex cycle");
    at.pants.push_back(it->curve);
    at.pants_measures.push_back(it->measure);
    const int carrying = static_cast<int>(std::count_if(
        cycles.begin(), cycles.end(), [&](const VertexCycle& v) { return v.measure[spec.marker[i]] > 0; }));
    if (carrying != 1) throw std::logic_error("adapted track: marker branch is not private");
    if (!t.is_large(spec.large[i])) throw std::logic_error("adapted track: connector branch is not large");
    std::vector<int> conn;
    for (int b = 0; b < t.num_branches(); ++b) {
      if (it->measure[b] > 0 || b == spec.large[i]) conn.push_back(b);
    }
    at.connector.push_back(std::move(conn));
  }
  return at;
}

}  // namespace

AdaptedTrack adapted_track(const std::string& surface) {
  for (const auto& spec : specs()) {
    if (surface == spec.name || surface == std::string(spec.name) + "-adapted") return build(spec);
  }
  throw std::invalid_argument("UnknownSurface: " + surface);
}

AdaptedTrack adapted_track(const SurfaceSig& sig) {
  if (sig == SurfaceSig{0, 5}) return adapted_track("s05");
  if (sig == SurfaceSig{1, 2}) return adapted_track("s12");
  throw std::invalid_argument("UnknownSurface: S_{" + std::to_string(sig.genus) + "," + std::to_string(sig.punctures) + "}");
}

PantsDecomposition decompose_at_adapted(const AdaptedTrack& at, std::span<const std::int64_t> mu) {
  const TrainTrack& t = at.track;
  if (static_cast<int>(mu.size()) != t.num_branches() || !t.check_switch_conditions(mu)) {
    throw TrackError("NotAdapted: not a transverse measure on the adapted track");
  }
  PantsDecomposition d;
  d.mu0.assign(mu.begin(), mu.end());
  for (std::size_t i = 0; i < at.pants.size(); ++i) {
    const Measure& nu = at.pants_measures[i];
    const std::int64_t on_marker = nu[at.marker[i]];
    const std::int64_t k = mu[at.marker[i]] / on_marker;
    if (k * on_marker != mu[at.marker[i]]) throw TrackError("NotAdapted: marker weight not a multiple");
    d.n.push_back(k);
  }
  for (std::size_t i = 0; i < at.pants.size(); ++i) {
    for (int b = 0; b < t.num_branches(); ++b) d.mu0[b] -= d.n[i] * at.pants_measures[i][b];
  }
  for (auto x : d.mu0) {
    if (x < 0) throw TrackError("NotAdapted: residual measure is negative");
  }
  for (int e : at.large) d.mu0_at_large.push_back(d.mu0[e]);
  return d;
}

}  // namespace trk
