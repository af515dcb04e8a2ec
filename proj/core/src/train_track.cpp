#include "trk/train_track.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace trk {

Word reversed(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& c : r) c.forward = !c.forward;
  return r;
}

TrainTrack::TrainTrack(ChartPtr chart, std::vector<Switch> switches, std::vector<Word> words)
    : chart_(std::move(chart)), switches_(std::move(switches)), words_(std::move(words)) {
  place_.assign(2 * words_.size(), HalfPlace{});
  for (int s = 0; s < num_switches(); ++s) {
    for (int side = 0; side < 2; ++side) {
      const auto& list = switches_[s].sides[side];
      for (int i = 0; i < static_cast<int>(list.size()); ++i) {
        const int h = list[i];
        if (h < 0 || h >= static_cast<int>(place_.size())) throw TrackError("half-branch id out of range");
        if (place_[h].sw != -1) throw TrackError("half-branch listed twice");
        place_[h] = {s, side, i};
      }
    }
  }
  for (const auto& p : place_) {
    if (p.sw == -1) throw TrackError("half-branch not attached to a switch");
  }
  for (const auto& w : words_) {
    for (const auto& c : w) {
      if (c.edge < 0 || c.edge >= chart_->num_edges()) throw TrackError("realization edge out of range");
    }
  }
}

bool TrainTrack::generic() const {
  for (const auto& s : switches_) {
    const auto n0 = s.sides[0].size(), n1 = s.sides[1].size();
    if (n0 == 0 || n1 == 0 || n0 + n1 > 3) return false;
  }
  return true;
}

bool TrainTrack::is_large(int b) const {
  const HalfPlace& p0 = place_[2 * b];
  const HalfPlace& p1 = place_[2 * b + 1];
  return p0.sw != p1.sw && switches_[p0.sw].sides[p0.side].size() == 1 &&
         switches_[p1.sw].sides[p1.side].size() == 1;
}

std::vector<int> TrainTrack::large_branches() const {
  if (!generic()) throw TrackError("NonGeneric");
  std::vector<int> out;
  for (int b = 0; b < num_branches(); ++b) {
    if (is_large(b)) out.push_back(b);
  }
  return out;
}

namespace {

template <class T>
bool switch_conditions(const TrainTrack& t, std::span<const T> mu) {
  if (static_cast<int>(mu.size()) != t.num_branches()) throw TrackError("IndexMismatch");
  for (const auto& s : t.switches()) {
    T sum[2] = {T(0), T(0)};
    for (int side = 0; side < 2; ++side) {
      for (int h : s.sides[side]) sum[side] += mu[h / 2];
    }
    if (sum[0] != sum[1]) return false;
  }
  return true;
}

}  // namespace

bool TrainTrack::check_switch_conditions(std::span<const std::int64_t> mu) const { return switch_conditions(*this, mu); }
bool TrainTrack::check_switch_conditions(std::span<const Rational> mu) const { return switch_conditions(*this, mu); }

std::vector<std::vector<std::int64_t>> TrainTrack::switch_rows() const {
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& s : switches_) {
    std::vector<std::int64_t> row(num_branches(), 0);
    for (int h : s.sides[1]) row[h / 2] += 1;
    for (int h : s.sides[0]) row[h / 2] -= 1;
    if (std::any_of(row.begin(), row.end(), [](std::int64_t x) { return x != 0; })) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<std::int64_t>> TrainTrack::realization_matrix() const {
  std::vector<std::vector<std::int64_t>> r(chart_->num_edges(), std::vector<std::int64_t>(num_branches(), 0));
  for (int b = 0; b < num_branches(); ++b) {
    for (const auto& c : words_[b]) r[c.edge][b] += 1;
  }
  return r;
}

Coords TrainTrack::pushforward(std::span<const std::int64_t> mu) const {
  if (static_cast<int>(mu.size()) != num_branches()) throw TrackError("IndexMismatch");
  Coords v(chart_->num_edges(), 0);
  for (int b = 0; b < num_branches(); ++b) {
    for (const auto& c : words_[b]) v[c.edge] += static_cast<int>(mu[b]);
  }
  return v;
}

TrainTrack::Canonical TrainTrack::canonical() const {
  const int nb = num_branches();
  Canonical best;
  for (int h0 = 0; h0 < 2 * nb; ++h0) {
    std::vector<int> label(nb, -1);
    std::vector<char> flipped(nb, 0);  // discovered from the end half
    std::vector<int> sw_label(num_switches(), -1);
    std::vector<int> sw_first_side(num_switches(), 0);
    std::vector<int> sw_order;
    int next_branch = 0;
    std::deque<int> queue;

    auto discover = [&](int h) {
      const int b = h / 2;
      if (label[b] != -1) return;
      label[b] = next_branch++;
      flipped[b] = h % 2;
      queue.push_back(h ^ 1);
    };
    auto visit_switch = [&](int h) {
      const HalfPlace& p = place_[h];
      if (sw_label[p.sw] != -1) return;
      sw_label[p.sw] = static_cast<int>(sw_order.size());
      sw_order.push_back(p.sw);
      sw_first_side[p.sw] = p.side;
      for (int k = 0; k < 2; ++k) {
        for (int x : switches_[p.sw].sides[p.side ^ k]) discover(x);
      }
    };

    discover(h0);
    queue.push_front(h0);
    for (int seed = 0;; ++seed) {
      while (!queue.empty()) {
        const int h = queue.front();
        queue.pop_front();
        visit_switch(h);
      }
      while (seed < 2 * nb && sw_label[place_[seed].sw] != -1) ++seed;
      if (seed >= 2 * nb) break;
      discover(seed);
      queue.push_back(seed);
    }

    std::vector<std::int64_t> key;
    key.reserve(8 * nb);
    auto half_label = [&](int h) { return 2 * label[h / 2] + ((h % 2) ^ flipped[h / 2]); };
    for (int s : sw_order) {
      for (int k = 0; k < 2; ++k) {
        const auto& list = switches_[s].sides[sw_first_side[s] ^ k];
        key.push_back(static_cast<std::int64_t>(list.size()));
        for (int h : list) key.push_back(half_label(h));
      }
    }
    std::vector<int> inverse(nb);
    for (int b = 0; b < nb; ++b) inverse[label[b]] = b;
    for (int l = 0; l < nb; ++l) {
      const int b = inverse[l];
      const Word w = flipped[b] ? reversed(words_[b]) : words_[b];
      key.push_back(-1 - static_cast<std::int64_t>(w.size()));
      for (const auto& c : w) key.push_back(2 * c.edge + (c.forward ? 1 : 0));
    }
    if (best.key.empty() || key < best.key) {
      best.key = std::move(key);
      best.perm = label;
    }
  }
  return best;
}

std::int64_t total_mass(std::span<const std::int64_t> mu) { return std::accumulate(mu.begin(), mu.end(), std::int64_t{0}); }

Rational total_mass(std::span<const Rational> mu) { return std::accumulate(mu.begin(), mu.end(), Rational(0)); }

}  // namespace trk
