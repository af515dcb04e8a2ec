#include <doctest.h>

#include <numeric>
#include <variant>

#include "trk/enumerate.hpp"
#include "trk/serialization.hpp"

using namespace trk;

TEST_CASE("built-in charts satisfy the Euler count") {
  for (const auto& [name, edges, tris, punctures] :
       {std::tuple{"s05", 9, 6, 5}, std::tuple{"s12", 6, 4, 2}}) {
    const ChartPtr c = builtin_chart(name);
    CHECK(c->num_edges() == edges);
    CHECK(c->num_triangles() == tris);
    CHECK(c->num_punctures() == punctures);
    CHECK(c->signature().expected_edges() == edges);
    // every edge appears once forward and once backward
    for (int e = 0; e < c->num_edges(); ++e) {
      const auto s = c->slots(e);
      CHECK(c->side(s[0].triangle, s[0].side).forward);
      CHECK_FALSE(c->side(s[1].triangle, s[1].side).forward);
      CHECK(c->across(s[0]) == s[1]);
    }
  }
  CHECK_THROWS_AS(builtin_chart("s33"), std::invalid_argument);
}

TEST_CASE("coordinate validation rejects non-curves") {
  const ChartPtr c = chart_s05();
  const auto zero = validate_coords(c, Coords(9, 0));
  REQUIRE(std::holds_alternative<CurveRejection>(zero));
  CHECK(std::get<CurveRejection>(zero) == CurveRejection::ZeroVector);

  Coords odd(9, 0);
  odd[0] = 1;
  const auto parity = validate_coords(c, odd);
  REQUIRE(std::holds_alternative<CurveRejection>(parity));

  for (int p = 0; p < c->num_punctures(); ++p) {
    Coords link(c->puncture_link(p).begin(), c->puncture_link(p).end());
    const auto r = validate_coords(c, link);
    REQUIRE(std::holds_alternative<CurveRejection>(r));
    CHECK(std::get<CurveRejection>(r) == CurveRejection::Peripheral);
    CHECK(peripheral_puncture(*c, link) == p);
  }
  CHECK_THROWS(NormalCurve::from_coords(c, Coords(9, 0)));
}

TEST_CASE("curve traces reproduce coordinates") {
  for (const char* name : {"s05", "s12"}) {
    const ChartPtr c = builtin_chart(name);
    for (const auto& curve : enumerate_curves(c, 3)) {
      const auto word = curve.trace();
      CHECK(coords_of_trace(*c, word) == curve.coords());
      CHECK(static_cast<int>(word.size()) == curve.weight());
      CHECK(curve.trace() == word);
    }
  }
}

TEST_CASE("universe sizes") {
  // frozen from the brute-force enumeration over all vectors with entries <= N
  const std::vector<std::size_t> s05{5, 17, 55, 121};
  const std::vector<std::size_t> s12{6, 26, 70, 162};
  for (int n = 1; n <= 4; ++n) {
    CHECK(enumerate_curves(chart_s05(), n).size() == s05[n - 1]);
    CHECK(enumerate_curves(chart_s12(), n).size() == s12[n - 1]);
  }
}

TEST_CASE("chart and curve JSON round trip") {
  for (const char* name : {"s05", "s12"}) {
    const ChartPtr c = builtin_chart(name);
    CHECK(chart_from_json(chart_to_json(*c)) == c);
    for (const auto& curve : enumerate_curves(c, 2)) {
      CHECK(curve_from_json(Json::parse(curve_to_json(curve).dump())) == curve);
    }
  }
  CHECK_THROWS_AS(curve_from_json(Json{{"chart", "s05"}}), SerializationError);
  CHECK_THROWS_AS(curve_from_json(Json{{"chart", "s05"}, {"coords", {1, 2}}}, chart_s12()), MismatchedChart);
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(rational_string(Rational(6, 3)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), SerializationError);
}
