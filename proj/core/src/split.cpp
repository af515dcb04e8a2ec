#include "trk/split.hpp"

namespace trk {

std::string_view to_string(SplitDir d) {
  switch (d) {
    case SplitDir::Left: return "L";
    case SplitDir::Right: return "R";
    case SplitDir::Central: return "C";
  }
  return "?";
}

SplitDir split_dir_from_string(std::string_view s) {
  if (s == "L" || s == "Left") return SplitDir::Left;
  if (s == "R" || s == "Right") return SplitDir::Right;
  if (s == "C" || s == "Central") return SplitDir::Central;
  throw std::invalid_argument("unknown split direction '" + std::string(s) + "'");
}

Measure CarryingMatrix::apply(std::span<const std::int64_t> mu) const {
  if (static_cast<int>(mu.size()) != cols()) throw TrackError("IndexMismatch");
  Measure out(rows(), 0);
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c < cols(); ++c) out[r] += m[r][c] * mu[c];
  }
  return out;
}

CarryingMatrix CarryingMatrix::compose(const CarryingMatrix& other) const {
  if (cols() != other.rows()) throw TrackError("IndexMismatch");
  CarryingMatrix out;
  out.m.assign(rows(), std::vector<std::int64_t>(other.cols(), 0));
  for (int r = 0; r < rows(); ++r) {
    for (int k = 0; k < cols(); ++k) {
      if (m[r][k] == 0) continue;
      for (int c = 0; c < other.cols(); ++c) out.m[r][c] += m[r][k] * other.m[k][c];
    }
  }
  return out;
}

CarryingMatrix CarryingMatrix::identity(int n) {
  CarryingMatrix out;
  out.m.assign(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) out.m[i][i] = 1;
  return out;
}

SplitSite split_site(const TrainTrack& t, int e) {
  if (e < 0 || e >= t.num_branches()) throw TrackError("NotLargeBranch");
  if (!t.generic()) throw TrackError("NonGeneric");
  if (!t.is_large(e)) throw TrackError("NotLargeBranch");
  const HalfPlace& pv = t.place(2 * e);
  const HalfPlace& pw = t.place(2 * e + 1);
  const auto& ov = t.sw(pv.sw).sides[1 - pv.side];
  const auto& ow = t.sw(pw.sw).sides[1 - pw.side];
  if (ov.size() != 2 || ow.size() != 2) throw TrackError("NonGeneric");
  return {e, pv.sw, pw.sw, ov[1], ov[0], ow[0], ow[1]};
}

namespace {

// Moves half-branch h along `path` (from its old switch to its new one).
void drag(std::vector<Word>& words, int h, const Word& path) {
  Word& w = words[h / 2];
  if (h % 2 == 0) {
    Word r = reversed(path);
    r.insert(r.end(), w.begin(), w.end());
    w = std::move(r);
  } else {
    w.insert(w.end(), path.begin(), path.end());
  }
}

}  // namespace

SplitResult split(const TrainTrack& t, const SplitMove& mv) {
  const SplitSite s = split_site(t, mv.branch);
  const int e = s.e;
  const int nb = t.num_branches();
  const Word we = t.word(e);
  const Word we_rev = reversed(we);
  const int side_v = t.place(2 * e).side;
  const int side_w = t.place(2 * e + 1).side;

  std::vector<Switch> sw = t.switches();
  std::vector<Word> words = t.words();

  if (mv.dir == SplitDir::Right) {
    sw[s.v].sides[1 - side_v] = {s.a};
    sw[s.v].sides[side_v] = {s.c, 2 * e};
    sw[s.w].sides[1 - side_w] = {s.d};
    sw[s.w].sides[side_w] = {s.b, 2 * e + 1};
    drag(words, s.c, we_rev);
    drag(words, s.b, we);
    CarryingMatrix m = CarryingMatrix::identity(nb);
    m.m[e][s.c / 2] += 1;
    m.m[e][s.b / 2] += 1;
    return {TrainTrack(t.chart(), std::move(sw), std::move(words)), std::move(m)};
  }
  if (mv.dir == SplitDir::Left) {
    sw[s.v].sides[1 - side_v] = {s.b};
    sw[s.v].sides[side_v] = {2 * e, s.d};
    sw[s.w].sides[1 - side_w] = {s.c};
    sw[s.w].sides[side_w] = {2 * e + 1, s.a};
    drag(words, s.a, we);
    drag(words, s.d, we_rev);
    CarryingMatrix m = CarryingMatrix::identity(nb);
    m.m[e][s.a / 2] += 1;
    m.m[e][s.d / 2] += 1;
    return {TrainTrack(t.chart(), std::move(sw), std::move(words)), std::move(m)};
  }

  // Central: collapse e, merging w into v.
  drag(words, s.c, we_rev);
  drag(words, s.d, we_rev);
  Switch merged;
  merged.sides[0] = t.sw(s.v).sides[1 - side_v];
  merged.sides[1] = t.sw(s.w).sides[1 - side_w];
  sw[s.v] = merged;
  sw[s.w] = sw.back();
  sw.pop_back();

  const int last = nb - 1;
  auto relabel = [&](int h) { return h / 2 == last ? 2 * e + h % 2 : h; };
  for (auto& x : sw) {
    for (auto& side : x.sides) {
      for (int& h : side) h = relabel(h);
    }
  }
  words[e] = words[last];
  words.pop_back();

  auto new_col = [&](int b) { return b == last ? e : b; };
  CarryingMatrix m;
  m.m.assign(nb, std::vector<std::int64_t>(nb - 1, 0));
  for (int r = 0; r < nb; ++r) {
    if (r != e) m.m[r][new_col(r)] = 1;
  }
  m.m[e][new_col(s.a / 2)] += 1;
  m.m[e][new_col(s.b / 2)] += 1;
  return {TrainTrack(t.chart(), std::move(sw), std::move(words)), std::move(m)};
}

namespace {

template <class T>
SplitDir direction(const TrainTrack& t, int e, std::span<const T> mu) {
  const SplitSite s = split_site(t, e);
  if (static_cast<int>(mu.size()) != t.num_branches()) throw TrackError("IndexMismatch");
  if (mu[e] == T(0)) throw TrackError("ZeroOnLargeBranch");
  const T right = mu[e] - mu[s.c / 2] - mu[s.b / 2];
  const T left = mu[e] - mu[s.a / 2] - mu[s.d / 2];
  if (right > T(0)) return SplitDir::Right;
  if (left > T(0)) return SplitDir::Left;
  return SplitDir::Central;
}

}  // namespace

SplitDir compatible_split_direction(const TrainTrack& t, int e, std::span<const std::int64_t> mu) {
  return direction(t, e, mu);
}

SplitDir compatible_split_direction(const TrainTrack& t, int e, std::span<const Rational> mu) {
  return direction(t, e, mu);
}

std::optional<Measure> split_preimage(const TrainTrack& t, const SplitMove& mv, std::span<const std::int64_t> mu) {
  const SplitSite s = split_site(t, mv.branch);
  const int e = s.e;
  if (static_cast<int>(mu.size()) != t.num_branches()) throw TrackError("IndexMismatch");
  Measure nu(mu.begin(), mu.end());
  switch (mv.dir) {
    case SplitDir::Right: nu[e] = mu[e] - mu[s.c / 2] - mu[s.b / 2]; break;
    case SplitDir::Left: nu[e] = mu[e] - mu[s.a / 2] - mu[s.d / 2]; break;
    case SplitDir::Central:
      if (mu[e] != mu[s.a / 2] + mu[s.b / 2] || mu[e] != mu[s.c / 2] + mu[s.d / 2]) return std::nullopt;
      nu[e] = nu.back();
      nu.pop_back();
      break;
  }
  for (auto x : nu) {
    if (x < 0) return std::nullopt;
  }
  return nu;
}

}  // namespace trk
