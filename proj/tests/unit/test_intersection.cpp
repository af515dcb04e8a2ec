#include <doctest.h>

#include <random>

#include "trk/adapted.hpp"
#include "trk/enumerate.hpp"
#include "trk/intersection.hpp"
#include "trk/overlay.hpp"

using namespace trk;

TEST_CASE("intersection agrees with the bigon-reduction oracle") {
  for (const char* name : {"s05", "s12"}) {
    const auto curves = enumerate_curves(builtin_chart(name), 3);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, curves.size() - 1);
    for (int k = 0; k < 150; ++k) {
      const auto& a = curves[pick(rng)];
      const auto& b = curves[pick(rng)];
      const std::int64_t i = intersection_number(a, b);
      CHECK(i == overlay_intersection(a, b));
      CHECK(i == intersection_number(b, a));
      CHECK((i == 0) == disjoint(*a.chart(), a.coords(), b.coords()));
    }
    for (const auto& a : curves) CHECK(intersection_number(a, a) == 0);
  }
}

TEST_CASE("intersection is additive over multicurves") {
  const AdaptedTrack at = adapted_track("s05");
  const auto& p = at.pants;
  REQUIRE(p.size() == 2);
  CHECK(intersection_number(p[0], p[1]) == 0);
  Coords sum(p[0].coords().size());
  for (std::size_t e = 0; e < sum.size(); ++e) sum[e] = p[0].coords()[e] + 2 * p[1].coords()[e];
  const MultiCurve m = MultiCurve::from_coords(p[0].chart(), sum);
  CHECK(m.components().size() == 2);
  for (const auto& c : enumerate_curves(p[0].chart(), 2)) {
    CHECK(intersection_number(m, c) == intersection_number(p[0], c) + 2 * intersection_number(p[1], c));
  }
}

TEST_CASE("small hand-checked intersections") {
  // On the twice punctured torus, curves meeting once exist; on the sphere
  // every intersection number is even.
  bool saw_one = false;
  const auto t = enumerate_curves(chart_s12(), 2);
  for (const auto& a : t) {
    for (const auto& b : t) saw_one |= intersection_number(a, b) == 1;
  }
  CHECK(saw_one);
  const auto s = enumerate_curves(chart_s05(), 2);
  for (const auto& a : s) {
    for (const auto& b : s) CHECK(intersection_number(a, b) % 2 == 0);
  }
}
