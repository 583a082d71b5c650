#include <doctest.h>

#include <cmath>
#include <random>

#include "maxvar/families.hpp"
#include "maxvar/oracles.hpp"

using namespace maxvar;
using Pts = std::vector<std::pair<double, double>>;

namespace {
RadialProfile make(const Pts& p) { return load_profile(p); }
}

TEST_CASE("1d oracle") {
  auto ind = make({{0, 1}, {1, 1}, {1, 0}});
  for (double beta : {0.2, 0.5, 0.9}) {
    CHECK(oracle_1d_maximal(ind, 0.0, beta).value == doctest::Approx(1.0).epsilon(1e-9));
  }
  auto tent = make({{0, 1}, {1, 0}});
  auto o = oracle_1d_maximal(tent, 0.4, 0.5);
  CHECK(o.a <= 0.4);
  CHECK(o.b >= 0.4);
  // Dilation consistency.
  auto od = oracle_1d_maximal(tent.dilated(2.0), 0.2, 0.5);
  CHECK(od.value == doctest::Approx(std::pow(2.0, -0.5) * o.value).epsilon(1e-6));
  // Symmetric tent at 0: closed form is max over r of r^beta (1 - r/2).
  const double r = 2 * 0.5 / 1.5;
  CHECK(oracle_1d_maximal(tent, 0.0, 0.5).value ==
        doctest::Approx(std::pow(r, 0.5) * (1 - r / 2)).epsilon(1e-9));
}

TEST_CASE("Monte Carlo oracle") {
  auto one = make({{0, 1}, {10, 1}, {10, 0}});
  auto e = oracle_mc_ball_average(one, {1, 2}, AmbientParams(3, 1), 10000, 1);
  CHECK(e.mean == 1.0);
  CHECK(e.standard_error == 0.0);
  auto ind = make({{0, 1}, {1, 1}, {1, 0}});
  e = oracle_mc_ball_average(ind, {0, 2}, AmbientParams(2, 1), 1000000, 3);
  CHECK(std::abs(e.mean - 0.25) <= 3 * e.standard_error);
  auto tent = make({{0, 1}, {1, 0}});
  e = oracle_mc_ball_average(tent, {0, 1}, AmbientParams(2, 1), 1000000, 4);
  CHECK(std::abs(e.mean - 1.0 / 3) <= 3 * e.standard_error);
  auto again = oracle_mc_ball_average(tent, {0, 1}, AmbientParams(2, 1), 1000000, 4);
  CHECK(again.mean == e.mean);
  CHECK(again.standard_error == e.standard_error);
}

TEST_CASE("dense 2d oracle") {
  auto c = make({{0, 0.6}, {10, 0.6}, {10, 0}});
  CHECK(oracle_dense_average_2d(c, {2, 1.5}) == doctest::Approx(0.6).epsilon(1e-8));
  auto tent = make({{0, 1}, {1, 0}});
  auto mc = oracle_mc_ball_average(tent, {0.6, 0.5}, AmbientParams(2, 1), 1000000, 8);
  const double dense = oracle_dense_average_2d(tent, {0.6, 0.5});
  CHECK(std::abs(dense - mc.mean) <= 3 * mc.standard_error);
}
