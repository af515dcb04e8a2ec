#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trk/train_track.hpp"

namespace trk {

enum class SplitDir { Left, Right, Central };

std::string_view to_string(SplitDir d);
SplitDir split_dir_from_string(std::string_view s);

struct SplitMove {
  int branch = 0;
  SplitDir dir = SplitDir::Left;
  friend bool operator==(const SplitMove&, const SplitMove&) = default;
};

/// Integer matrix with rows indexed by branches of the carrying track and
/// columns by branches of the carried one.
struct CarryingMatrix {
  std::vector<std::vector<std::int64_t>> m;

  [[nodiscard]] int rows() const { return static_cast<int>(m.size()); }
  [[nodiscard]] int cols() const { return m.empty() ? 0 : static_cast<int>(m.front().size()); }
  [[nodiscard]] Measure apply(std::span<const std::int64_t> mu) const;
  /// (this * other): first carry by `other`, then by this.
  [[nodiscard]] CarryingMatrix compose(const CarryingMatrix& other) const;
  static CarryingMatrix identity(int n);
};

/// The local picture around a large branch e running from switch v to w.
/// Looking outward from v, the other side holds (b, a) left to right; looking
/// outward from w it holds (c, d). So a and c lie on one side of e, b and d on
/// the other.
struct SplitSite {
  int e, v, w;
  int a, b, c, d;  // half-branch ids
};

/// Throws TrackError("NotLargeBranch").
SplitSite split_site(const TrainTrack& t, int e);

struct SplitResult {
  TrainTrack track;
  CarryingMatrix matrix;
};

/// Right: a continues into d, Left: b continues into c, Central: e collapses and
/// its end switches merge (one branch fewer). Throws TrackError on a branch
/// that is not large or a non-generic track.
SplitResult split(const TrainTrack& t, const SplitMove& m);

/// Direction whose split still carries mu. Throws TrackError("ZeroOnLargeBranch")
/// when mu(e) = 0.
SplitDir compatible_split_direction(const TrainTrack& t, int e, std::span<const std::int64_t> mu);
SplitDir compatible_split_direction(const TrainTrack& t, int e, std::span<const Rational> mu);

/// Preimage of mu under the split's matrix when it is nonnegative, else nullopt.
std::optional<Measure> split_preimage(const TrainTrack& t, const SplitMove& m, std::span<const std::int64_t> mu);

}  // namespace trk
