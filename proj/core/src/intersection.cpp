#include "trk/intersection.hpp"

#include <algorithm>
#include <vector>

namespace trk {

namespace {

std::vector<ArcStep> reversed(std::span<const ArcStep> s) {
  std::vector<ArcStep> r(s.rbegin(), s.rend());
  for (auto& x : r) std::swap(x.in_side, x.out_side);
  return r;
}

// Sum over maximal common stretches of a and b (same direction).
// Returns -1 if the two cyclic words coincide.
std::int64_t linked_stretches(std::span<const ArcStep> a, std::span<const ArcStep> b) {
  const std::size_t n = a.size(), m = b.size();
  // Bucket b's steps by (triangle, out side).
  int max_t = 0;
  for (const auto& s : b) max_t = std::max(max_t, s.triangle);
  std::vector<std::vector<std::uint32_t>> bucket(3 * (max_t + 1));
  for (std::size_t l = 0; l < m; ++l) bucket[3 * b[l].triangle + b[l].out_side].push_back(static_cast<std::uint32_t>(l));

  std::int64_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const ArcStep& sa = a[k];
    if (sa.triangle > max_t) continue;
    for (std::uint32_t l : bucket[3 * sa.triangle + sa.out_side]) {
      if (b[l].in_side == sa.in_side) continue;
      // Start of a common stretch: entered from different sides, leave together.
      std::size_t s = 1;
      while (true) {
        const ArcStep& xa = a[(k + s) % n];
        const ArcStep& xb = b[(l + s) % m];
        if (xa.out_side != xb.out_side) break;
        if (++s > n + m) return -1;
      }
      const ArcStep& ea = a[(k + s) % n];
      const int x_start = (sa.out_side + 1) % 3;
      const int x_end = (ea.in_side + 1) % 3;
      if ((sa.in_side == x_start) == (ea.out_side == x_end)) ++total;
    }
  }
  return total;
}

}  // namespace

std::int64_t trace_intersection(std::span<const ArcStep> a, std::span<const ArcStep> b) {
  const std::int64_t same = linked_stretches(a, b);
  if (same < 0) return 0;
  const auto rb = reversed(b);
  const std::int64_t opposite = linked_stretches(a, rb);
  if (opposite < 0) return 0;
  return same + opposite;
}

bool disjoint(const Chart& chart, std::span<const int> a, std::span<const int> b) {
  if (std::equal(a.begin(), a.end(), b.begin(), b.end())) return true;
  Coords sum(a.size());
  int wa = 0, wb = 0;
  for (std::size_t e = 0; e < a.size(); ++e) {
    sum[e] = a[e] + b[e];
    wa += a[e];
    wb += b[e];
  }
  // The component through the first point must be a or b; the remainder is then
  // the unique normal representative of the other vector.
  const auto comps = trace_components(chart, sum);
  if (comps.size() != 2) return false;
  const Coords c0 = coords_of_trace(chart, comps[0]);
  return std::equal(c0.begin(), c0.end(), a.begin(), a.end()) || std::equal(c0.begin(), c0.end(), b.begin(), b.end());
}

std::int64_t intersection_number(const NormalCurve& a, const NormalCurve& b) {
  require_same_chart(*a.chart(), *b.chart());
  if (a == b) return 0;
  return trace_intersection(a.trace(), b.trace());
}

std::int64_t intersection_number(const MultiCurve& a, const NormalCurve& b) {
  std::int64_t total = 0;
  for (const auto& [c, w] : a.components()) total += w * intersection_number(c, b);
  return total;
}

std::int64_t intersection_number(const NormalCurve& a, const MultiCurve& b) { return intersection_number(b, a); }

std::int64_t intersection_number(const MultiCurve& a, const MultiCurve& b) {
  std::int64_t total = 0;
  for (const auto& [c, w] : b.components()) total += w * intersection_number(a, c);
  return total;
}

}  // namespace trk
