#include <doctest.h>

#include <random>

#include "maxvar/error.hpp"
#include "maxvar/families.hpp"
#include "maxvar/grid.hpp"
#include "maxvar/profile_io.hpp"

using namespace maxvar;

TEST_CASE("profile parsing") {
  auto a = parse_profile_json(R"({"knots": [[0, 1], [1, 0]]})");
  auto b = parse_profile_csv("t,F\n0,1\n# comment\n1,0\n");
  auto c = parse_profile_csv("0 1\n1\t0\n");
  CHECK(a == b);
  CHECK(a == c);
  CHECK(parse_profile_json(profile_to_json(a)) == a);
  auto jump = parse_profile_csv("0;1\n1;1\n1;0\n");
  CHECK(parse_profile_json(profile_to_json(jump)) == jump);
  CHECK_THROWS_AS(parse_profile_json("{\"knots\": 3}"), ProfileError);
  CHECK_THROWS_AS(parse_profile_json("not json"), ProfileError);
  CHECK_THROWS_AS(parse_profile_csv("0,1\nx,y\n"), ProfileError);
  CHECK_THROWS_AS(read_profile("/nonexistent/profile.csv"), ProfileError);
}

TEST_CASE("grid spec") {
  auto g = GridSpec::parse("0.1:10:3:log");
  auto p = g.points();
  REQUIRE(p.size() == 3);
  CHECK(p[1] == doctest::Approx(1.0));
  CHECK(p.back() == 10.0);
  auto lin = GridSpec::parse("0.25:1.25:5:lin").points();
  CHECK(lin[2] == doctest::Approx(0.75));
  auto r = g.refined();
  CHECK(r.count == 5);
  CHECK(r.points()[2] == doctest::Approx(1.0));
  CHECK(GridSpec::parse(g.to_string()).points() == p);
  auto st = GridSpec::standard(2.0);
  CHECK(st.lo == doctest::Approx(0.02));
  CHECK(st.hi == doctest::Approx(16.0));
  CHECK(st.count == 64);
  CHECK_THROWS_AS(GridSpec::parse("1:0:5:log"), ParameterError);
  CHECK_THROWS_AS(GridSpec::parse("0:1:5:log"), ParameterError);
  CHECK_THROWS_AS(GridSpec::parse("0:1:5"), ParameterError);
}

TEST_CASE("families") {
  auto fam = standard_family();
  REQUIRE(fam.size() == 3);
  CHECK(fam[0].name == "tent");
  std::mt19937_64 r1(5), r2(5);
  CHECK(random_profile(r1, 6) == random_profile(r2, 6));
  for (int i = 0; i < 100; ++i) {
    auto b = random_annulus_ball(r1, 2.0);
    CHECK(b.r <= 0.5 * b.d);
  }
  auto spec = FamilySpec::parse_json(
      R"({"standard": true, "random": {"count": 2, "knots": 5}, "params": [[2, 0.5]], "grid_count": 16})");
  auto m = spec.materialize(3);
  CHECK(m.size() == 5);
  CHECK(spec.materialize(3)[4].profile == m[4].profile);
  CHECK_THROWS_AS(FamilySpec::parse_json(R"({"params": [[2, 3.0]]})"), ParameterError);
}
