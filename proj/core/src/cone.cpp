#include "trk/cone.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>
#include <stdexcept>

#include "trk/train_track.hpp"

namespace trk {

namespace {

constexpr int kMaxDim = 128;
using ZeroSet = std::bitset<kMaxDim>;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("extreme_rays: int64 overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("extreme_rays: int64 overflow");
  return r;
}

struct Ray {
  IntVec x;
  ZeroSet zeros;
};

ZeroSet zeros_of(const IntVec& x) {
  ZeroSet z;
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] == 0;
  return z;
}

}  // namespace

void make_primitive(IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
}

std::vector<IntVec> extreme_rays(const std::vector<IntVec>& rows, int dim) {
  if (dim > kMaxDim) throw std::invalid_argument("extreme_rays: dimension too large");
  std::vector<Ray> rays;
  for (int i = 0; i < dim; ++i) {
    IntVec x(dim, 0);
    x[i] = 1;
    rays.push_back({x, zeros_of(x)});
  }
  for (const IntVec& a : rows) {
    std::vector<std::int64_t> val(rays.size());
    std::vector<int> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      std::int64_t s = 0;
      for (int i = 0; i < dim; ++i) {
        if (a[i] != 0 && rays[r].x[i] != 0) s += checked_mul(a[i], rays[r].x[i]);
      }
      val[r] = s;
      if (s > 0) {
        pos.push_back(static_cast<int>(r));
      } else if (s < 0) {
        neg.push_back(static_cast<int>(r));
      } else {
        next.push_back(rays[r]);
      }
    }
    for (int p : pos) {
      for (int n : neg) {
        const ZeroSet common = rays[p].zeros & rays[n].zeros;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (static_cast<int>(r) == p || static_cast<int>(r) == n) continue;
          if ((rays[r].zeros & common) == common) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec x(dim);
        for (int i = 0; i < dim; ++i) x[i] = checked_sub(checked_mul(val[p], rays[n].x[i]), checked_mul(val[n], rays[p].x[i]));
        make_primitive(x);
        next.push_back({x, zeros_of(x)});
      }
    }
    rays = std::move(next);
  }
  std::vector<IntVec> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool recurrence_check(const TrainTrack& t) {
  const auto rays = extreme_rays(t.switch_rows(), t.num_branches());
  for (int b = 0; b < t.num_branches(); ++b) {
    if (std::none_of(rays.begin(), rays.end(), [&](const IntVec& r) { return r[b] > 0; })) return false;
  }
  return true;
}

}  // namespace trk
