#include <doctest.h>

#include <cmath>

#include "maxvar/error.hpp"
#include "maxvar/families.hpp"
#include "maxvar/variation.hpp"

using namespace maxvar;

namespace {
const QuadratureConfig Q = QuadratureConfig::identity();
const SearchConfig S;

MaximalProfile synthetic(std::vector<double> s, std::vector<double> dm) {
  MaximalProfile mp;
  mp.s = std::move(s);
  mp.m.assign(mp.s.size(), 0.0);
  mp.dm_fd = dm;
  mp.dm_formula = dm;
  mp.corner.assign(mp.s.size(), false);
  for (double x : mp.s) {
    BestBallResult r;
    r.s = x;
    r.converged = true;
    mp.results.push_back(r);
  }
  return mp;
}
}  // namespace

TEST_CASE("lq norm of the derivative") {
  SUBCASE("constant m") {
    auto mp = synthetic({0.1, 0.5, 1.0}, {0, 0, 0});
    CHECK(lq_norm_derivative(mp, AmbientParams(2, 0.5)) == 0.0);
  }
  SUBCASE("m = max(0, 1 - s), n = 1, q = 2") {
    std::vector<double> s, dm;
    for (int i = 0; i <= 100; ++i) {
      s.push_back(i / 100.0 * (1 - 1e-12));
      dm.push_back(-1.0);
    }
    auto mp = synthetic(s, dm);
    CHECK(lq_norm_derivative(mp, AmbientParams(1, 0.5)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  }
  SUBCASE("unconverged points are reported") {
    auto mp = synthetic({0.1, 0.5, 1.0}, {0, 0, 0});
    mp.results[1].converged = false;
    CHECK_THROWS_AS(lq_norm_derivative(mp, AmbientParams(2, 0.5)), ConvergenceError);
  }
}

TEST_CASE("region histogram is a partition") {
  auto fam = standard_family();
  AmbientParams p2(2, 0.5);
  const GridSpec grid = GridSpec::standard(fam[1].profile.support_radius(), 32);
  auto mp = maximal_profile(fam[1].profile, grid, p2, S, Q);
  auto h = region_histogram(mp);
  CHECK(h[0] + h[1] + h[2] + h[3] == 32);
}

TEST_CASE("variation report of the tent") {
  auto fam = standard_family();
  const auto& tent = fam[0].profile;
  AmbientParams p2(2, 0.5);
  const GridSpec grid = GridSpec::standard(tent.support_radius());
  auto rep = variation_report(tent, p2, grid, S, Q);
  CHECK(std::isfinite(rep.ratio));
  CHECK(rep.ratio > 0);
  CHECK(rep.l1_norm_df == doctest::Approx(std::acos(-1.0)));
  REQUIRE(rep.refinement_deviation);
  CHECK(*rep.refinement_deviation <= 0.05);
  REQUIRE(rep.dilation_deviation);
  CHECK(*rep.dilation_deviation <= 0.01);
  CHECK(rep.exponent_identity_residual <= 1e-12);
  CHECK(rep.histogram[0] + rep.histogram[1] + rep.histogram[2] + rep.histogram[3] == grid.count);

  VariationOptions plain{false, 0.0};
  auto scaled = variation_report(tent.scaled(2.5), p2, grid, S, Q, plain);
  auto base = variation_report(tent, p2, grid, S, Q, plain);
  CHECK(std::abs(scaled.ratio - base.ratio) <= 1e-9 * base.ratio);
  for (std::size_t i = 0; i < base.sweep.size(); ++i) {
    const AxisBall sb = scaled.sweep.results[i].ball, bb = base.sweep.results[i].ball;
    CHECK(std::max(std::abs(sb.d - bb.d), std::abs(sb.r - bb.r)) <= 1e-6 * bb.r);
  }
  VariationOptions half{false, 0.5};
  auto h = variation_report(tent, p2, grid, S, Q, half);
  REQUIRE(h.dilation_deviation);
  CHECK(*h.dilation_deviation <= 0.01);
}

TEST_CASE("family sweep") {
  FamilySpec single;
  single.profiles.push_back(standard_family()[0]);
  single.params.push_back({2, 0.5});
  single.grid_count = 24;
  VariationOptions plain{false, 0.0};
  auto table = family_sweep(single, 1, S, Q, plain);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].report.has_value());
  CHECK(table.max_ratio(2, 0.5).has_value());
  CHECK_FALSE(table.max_ratio(3, 0.5).has_value());

  FamilySpec rnd;
  rnd.random_count = 3;
  rnd.params.push_back({2, 0.5});
  rnd.grid_count = 16;
  auto a = family_sweep(rnd, 9, S, Q, plain);
  auto b = family_sweep(rnd, 9, S, Q, plain);
  CHECK(to_json(a) == to_json(b));
  CHECK(to_text(a) == to_text(b));
}
