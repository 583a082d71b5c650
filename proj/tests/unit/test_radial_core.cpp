#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maxvar/error.hpp"
#include "maxvar/families.hpp"
#include "maxvar/radial_core.hpp"
#include "reference.hpp"

using namespace maxvar;
using Pts = std::vector<std::pair<double, double>>;

namespace {

RadialProfile make(const Pts& p) { return load_profile(p); }

const double pi = std::numbers::pi;

}  // namespace

TEST_CASE("ambient parameters") {
  AmbientParams p(2, 0.5);
  CHECK(p.q() == doctest::Approx(4.0 / 3.0));
  CHECK(std::abs(p.q() * p.beta() - p.n() * (p.q() - 1.0)) < 1e-15);
  CHECK(p.omega() == doctest::Approx(pi));
  CHECK(p.sigma() == doctest::Approx(2 * pi));
  CHECK(p.sigma_lower() == doctest::Approx(2.0));
  CHECK(AmbientParams(3, 1.0).sigma() == doctest::Approx(4 * pi));
  CHECK(AmbientParams(1, 0.5).sigma() == doctest::Approx(2.0));
  CHECK_THROWS_AS(AmbientParams(2, 2.0), ParameterError);
  CHECK_THROWS_AS(AmbientParams(2, 0.0), ParameterError);
  CHECK_THROWS_AS(AmbientParams(0, 0.5), ParameterError);
  CHECK_THROWS_AS(AmbientParams(2, std::nan("")), ParameterError);
}

TEST_CASE("load_profile") {
  SUBCASE("tent loads as is") {
    auto tent = make({{0, 1}, {1, 0}});
    CHECK(tent.support_radius() == 1.0);
    CHECK(tent(0.25) == doctest::Approx(0.75));
    CHECK(tent(2.0) == 0.0);
    CHECK(tent.max_value() == 1.0);
  }
  SUBCASE("negated input gives the same profile") {
    CHECK(make({{0, -1}, {1, 0}}) == make({{0, 1}, {1, 0}}));
    Pts p{{0, 0.3}, {0.7, 1.2}, {1.5, 0.4}, {2.0, 0}};
    Pts neg = p;
    for (auto& q : neg) q.second = -q.second;
    CHECK(make(p) == make(neg));
  }
  SUBCASE("sign change inserts a knot at the crossing") {
    Pts p{{0, 0}, {0.5, -0.5}, {1, 0.5}, {2, 0}};
    auto prof = make(p);
    bool found = false;
    for (const Knot& k : prof.knots()) found = found || std::abs(k.t - 0.75) < 1e-15;
    CHECK(found);
    // Dense sampling of |input|.
    for (int i = 0; i <= 2000; ++i) {
      const double t = 2.0 * i / 2000;
      double v;
      if (t < 0.5) v = -t;
      else if (t < 1.0) v = -0.5 + 2.0 * (t - 0.5);
      else v = 0.5 - 0.5 * (t - 1.0);
      CHECK(prof(t) == doctest::Approx(std::abs(v)).epsilon(1e-12));
    }
  }
  SUBCASE("repeated radius is a jump") {
    auto ind = make({{0, 1}, {1, 1}, {1, 0}});
    CHECK(ind(0.999) == 1.0);
    CHECK(ind(1.001) == 0.0);
    CHECK(ind(1.0) == 0.5);
  }
  SUBCASE("missing origin and nonzero tail") {
    auto p = make({{0.5, 1}, {1.0, 2}});
    CHECK(p(0.0) == 1.0);
    CHECK(p(0.75) == doctest::Approx(1.5));
    CHECK(p(1.5) == 0.0);
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(make({{0, 1}, {0.5, 1}, {0.3, 0}}), ProfileError);
    CHECK_THROWS_AS(make({{0, 0}, {1, 0}}), ProfileError);
    CHECK_THROWS_AS(make({}), ProfileError);
    CHECK_THROWS_AS(make({{0, std::nan("")}, {1, 0}}), ProfileError);
    CHECK_THROWS_AS(make({{-1, 1}, {1, 0}}), ProfileError);
  }
}

TEST_CASE("norms in closed form") {
  auto tent = make({{0, 1}, {1, 0}});
  CHECK(gradient_l1_norm(tent, AmbientParams(2, 0.5)) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(gradient_l1_norm(tent, AmbientParams(1, 0.5)) == doctest::Approx(2.0).epsilon(1e-14));
  auto bump = make({{0, 0}, {1, 0}, {2, 1}, {3, 0}});
  CHECK(gradient_l1_norm(bump, AmbientParams(3, 1.0)) ==
        doctest::Approx(4 * pi * 26.0 / 3.0).epsilon(1e-14));
  CHECK(l1_norm(make({{0, 1}, {1, 1}, {1, 0}}), AmbientParams(2, 0.5)) ==
        doctest::Approx(pi).epsilon(1e-14));
  CHECK(l1_norm(tent, AmbientParams(2, 0.5)) == doctest::Approx(pi / 3).epsilon(1e-14));
  // Indicator: total variation is the jump times the sphere area.
  CHECK(gradient_l1_norm(make({{0, 1}, {1, 1}, {1, 0}}), AmbientParams(2, 0.5)) ==
        doctest::Approx(2 * pi).epsilon(1e-14));
}

TEST_CASE("norms match adaptive quadrature on random profiles") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 30; ++k) {
    auto prof = random_profile(rng, 7);
    Pts pts;
    for (const Knot& kn : prof.knots()) pts.emplace_back(kn.t, kn.right);
    for (int n : {1, 2, 3}) {
      AmbientParams params(n, 0.5);
      CHECK(l1_norm(prof, params) == doctest::Approx(ref::l1_norm(pts, n)).epsilon(1e-10));
      // Gradient: |slope| is piecewise constant, so integrate per piece.
      double tv = 0.0;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i].first, b = pts[i + 1].first;
        const double s = std::abs((pts[i + 1].second - pts[i].second) / (b - a));
        tv += ref::quad([&](double t) { return s * std::pow(t, n - 1); }, a, b, 1e-15);
      }
      const double sigma = n * ref::ball_volume(n, 1.0);
      CHECK(gradient_l1_norm(prof, params) == doctest::Approx(sigma * tv).epsilon(1e-10));
    }
  }
}

TEST_CASE("level_intervals") {
  auto tent = make({{0, 1}, {1, 0}});
  auto iv = level_intervals(tent, 0.25, 0.75, {0, 1});
  REQUIRE(iv.size() == 1);
  CHECK(iv[0].lo == doctest::Approx(0.25));
  CHECK(iv[0].hi == doctest::Approx(0.75));

  auto plateau = make({{0, 0}, {1, 0.5}, {2, 0.5}, {3, 0}});
  auto pv = level_intervals(plateau, 0.4, 0.6, {0, 3});
  REQUIRE(pv.size() == 1);
  CHECK(pv[0].lo == doctest::Approx(0.8));
  CHECK(pv[0].hi == doctest::Approx(2.2));

  CHECK(level_intervals(tent, 2.0, 3.0, {0, 1}).empty());

  SUBCASE("dense membership scan") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
      auto prof = random_profile(rng, 8);
      const double T = prof.support_radius();
      const double lo = uniform(rng, 0.1, 0.5), hi = lo + uniform(rng, 0.05, 0.5);
      const Interval window{uniform(rng, 0.0, 0.3 * T), uniform(rng, 0.6 * T, 1.2 * T)};
      auto ivs = level_intervals(prof, lo, hi, window);
      for (std::size_t i = 0; i + 1 < ivs.size(); ++i) CHECK(ivs[i].hi < ivs[i + 1].lo);
      int mismatches = 0;
      const int samples = 100000;
      for (int i = 0; i < samples; ++i) {
        const double t = window.lo + (window.hi - window.lo) * (i + 0.5) / samples;
        const double v = prof(t);
        const bool member = v >= lo && v <= hi;
        bool listed = false;
        for (const Interval& I : ivs) listed = listed || (t >= I.lo && t <= I.hi);
        // Allow disagreement only within rounding of an interval end.
        if (member != listed) {
          double gap = 1e300;
          for (const Interval& I : ivs) gap = std::min({gap, std::abs(t - I.lo), std::abs(t - I.hi)});
          if (gap > 1e-9) ++mismatches;
        }
      }
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("scaled and dilated profiles") {
  auto tent = make({{0, 1}, {1, 0}});
  CHECK(tent.scaled(2.5)(0.2) == doctest::Approx(2.0));
  CHECK(tent.dilated(2.0)(0.25) == doctest::Approx(0.5));
  CHECK(tent.dilated(2.0).support_radius() == doctest::Approx(0.5));
}
