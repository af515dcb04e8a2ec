#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

#include "trk/chart.hpp"
#include "trk/curve.hpp"

namespace trk {

using Rational = boost::rational<std::int64_t>;
using Measure = std::vector<std::int64_t>;
using RationalMeasure = std::vector<Rational>;

class TrackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A branch crossing one edge of the chart. `forward` means from the slot-0
/// side of the edge to the slot-1 side.
struct EdgeCrossing {
  int edge = 0;
  bool forward = true;
  friend bool operator==(const EdgeCrossing&, const EdgeCrossing&) = default;
};
using Word = std::vector<EdgeCrossing>;

Word reversed(const Word& w);

/// A switch. Each side lists half-branch ids left to right, looking outward
/// from the switch in the direction that side points.
struct Switch {
  std::array<std::vector<int>, 2> sides;
};

/// Where a half-branch sits.
struct HalfPlace {
  int sw = -1;
  int side = 0;
  int index = 0;
};

/// A train track together with a realization in a chart.
///
/// Branch b has half-branches 2b (its start) and 2b+1 (its end); its word
/// lists the edges it crosses from start to end.
class TrainTrack {
 public:
  TrainTrack(ChartPtr chart, std::vector<Switch> switches, std::vector<Word> words);

  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] int num_branches() const { return static_cast<int>(words_.size()); }
  [[nodiscard]] int num_switches() const { return static_cast<int>(switches_.size()); }
  [[nodiscard]] const Switch& sw(int s) const { return switches_[s]; }
  [[nodiscard]] const std::vector<Switch>& switches() const { return switches_; }
  [[nodiscard]] const Word& word(int b) const { return words_[b]; }
  [[nodiscard]] const std::vector<Word>& words() const { return words_; }
  [[nodiscard]] const HalfPlace& place(int half) const { return place_[half]; }

  /// Every switch has total valence at most 3 with a lone half on one side.
  [[nodiscard]] bool generic() const;
  /// Branch ids whose both halves are alone on their switch side, on distinct switches.
  /// Throws TrackError("NonGeneric") for non-generic tracks.
  [[nodiscard]] std::vector<int> large_branches() const;
  [[nodiscard]] bool is_large(int b) const;

  /// Throws TrackError("IndexMismatch") if the size is wrong.
  [[nodiscard]] bool check_switch_conditions(std::span<const std::int64_t> mu) const;
  [[nodiscard]] bool check_switch_conditions(std::span<const Rational> mu) const;

  /// Switch equations as integer rows (side 1 minus side 0), one per switch.
  [[nodiscard]] std::vector<std::vector<std::int64_t>> switch_rows() const;

  /// Edge-crossing counts: entry [e][b] counts crossings of edge e by branch b.
  [[nodiscard]] std::vector<std::vector<std::int64_t>> realization_matrix() const;
  /// Normal coordinates of the (multi)curve carried with measure mu.
  [[nodiscard]] Coords pushforward(std::span<const std::int64_t> mu) const;

  /// Canonical relabelling invariant under renumbering switches and branches,
  /// reorienting branches and renaming switch sides. `perm[b]` is the
  /// canonical label of branch b.
  struct Canonical {
    std::vector<std::int64_t> key;
    std::vector<int> perm;
  };
  [[nodiscard]] Canonical canonical() const;

  friend bool operator==(const TrainTrack& a, const TrainTrack& b) { return a.canonical().key == b.canonical().key; }

 private:
  ChartPtr chart_;
  std::vector<Switch> switches_;
  std::vector<Word> words_;
  std::vector<HalfPlace> place_;
};

std::int64_t total_mass(std::span<const std::int64_t> mu);
Rational total_mass(std::span<const Rational> mu);

/// Sum of the extreme rays is positive on every branch.
bool recurrence_check(const TrainTrack& t);

}  // namespace trk
