#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maxvar/averages.hpp"
#include "maxvar/families.hpp"
#include "maxvar/oracles.hpp"
#include "reference.hpp"

using namespace maxvar;
using Pts = std::vector<std::pair<double, double>>;

namespace {

const double pi = std::numbers::pi;
const QuadratureConfig Q = QuadratureConfig::identity();
const Pts kTent{{0, 1}, {1, 0}};
const Pts kBump{{0, 0}, {1, 0}, {2, 1}, {3, 0}};
const Pts kIndicator{{0, 1}, {1, 1}, {1, 0}};

RadialProfile make(const Pts& p) { return load_profile(p); }

Pts points_of(const RadialProfile& prof) {
  Pts p;
  for (const Knot& k : prof.knots()) {
    if (k.left != k.right && k.t > 0) p.emplace_back(k.t, k.left);
    p.emplace_back(k.t, k.right);
  }
  return p;
}

}  // namespace

TEST_CASE("test-side reference reproduces closed forms") {
  CHECK(ref::ball_average(kTent, 0, 1, 2) == doctest::Approx(1.0 / 3).epsilon(1e-11));
  CHECK(ref::gradient_radial(kTent, 0, 1, 2) == doctest::Approx(-2.0 / 3).epsilon(1e-11));
  CHECK(ref::ball_average(kIndicator, 0, 2, 3) == doctest::Approx(1.0 / 8).epsilon(1e-11));
  CHECK(ref::sphere_average(kTent, 0, 0.25, 2) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("ball_average examples") {
  for (int n : {1, 2, 3, 5}) {
    AmbientParams params(n, 0.5);
    CHECK(ball_average(make(kIndicator), {0, 2}, params, Q) ==
          doctest::Approx(std::pow(2.0, -n)).epsilon(1e-12));
  }
  auto plateau = make({{0, 0}, {1, 0.7}, {3, 0.7}, {4, 0}});
  CHECK(ball_average(plateau, {2, 0.5}, AmbientParams(3, 1), Q) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(ball_average(make(kTent), {0, 1}, AmbientParams(2, 0.5), Q) ==
        doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("ball_average of a constant is 1") {
  auto one = make({{0, 1}, {100, 1}, {100, 0}});
  std::mt19937_64 rng(2);
  for (int n : {2, 3, 5}) {
    AmbientParams params(n, 1.0);
    for (int k = 0; k < 100; ++k) {
      const AxisBall b{uniform(rng, 0, 10), uniform(rng, 0.01, 10)};
      CHECK(std::abs(ball_average(one, b, params, Q) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("sphere_average examples") {
  auto plateau = make({{0, 0}, {1, 0.7}, {3, 0.7}, {4, 0}});
  CHECK(sphere_average(plateau, {2, 0.5}, AmbientParams(2, 1), Q) == doctest::Approx(0.7));
  auto tent = make(kTent);
  CHECK(sphere_average(tent, {0, 0.3}, AmbientParams(3, 1), Q) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(sphere_average(tent, {1, 0.5}, AmbientParams(2, 1), Q) ==
        doctest::Approx(ref::sphere_average(kTent, 1, 0.5, 2)).epsilon(1e-9));
}

TEST_CASE("gradient averages") {
  auto tent = make(kTent);
  AmbientParams p2(2, 0.5);
  CHECK(gradient_axial_component(tent, {0, 0.7}, p2, Q) == doctest::Approx(0.0));
  auto plateau = make({{0, 0}, {1, 0.7}, {3, 0.7}, {4, 0}});
  CHECK(gradient_axial_component(plateau, {2, 0.5}, p2, Q) == doctest::Approx(0.0));
  CHECK(gradient_radial_moment(plateau, {2, 0.5}, p2, Q) == doctest::Approx(0.0));
  CHECK(gradient_radial_moment(tent, {0, 1}, p2, Q) == doctest::Approx(-2.0 / 3).epsilon(1e-12));
  CHECK(gradient_axial_component(tent, {1, 0.5}, p2, Q) ==
        doctest::Approx(ref::gradient_axial(kTent, 1, 0.5, 2)).epsilon(1e-8));
}

TEST_CASE("weighted gradient average") {
  auto tent = make(kTent);
  AmbientParams p2(2, 0.5);
  // |F'| = -F' on a monotone stretch: unit weight gives the magnitude average.
  const double unit = weighted_gradient_average(tent, {0.5, 0.25}, p2, RadialWeight::unit(), Q);
  CHECK(unit == doctest::Approx(1.0).epsilon(1e-12));
  const auto empty = RadialWeight::level_set({}, 2.0, 3.0);
  CHECK(weighted_gradient_average(tent, {0.5, 0.25}, p2, empty, Q) == 0.0);
  // Level set A = [0.25, 0.75]: fraction of B(0.5 e, 0.25) with |y| in A.
  const auto w = RadialWeight::level_set(level_intervals(tent, 0.25, 0.75, {0, 1}), 0.25, 0.75);
  const double got = weighted_gradient_average(tent, {0.5, 0.25}, p2, w, Q);
  const Pts ind{{0, 0}, {0.25, 0}, {0.25, 1}, {0.75, 1}, {0.75, 0}};
  CHECK(got == doctest::Approx(ref::ball_average(ind, 0.5, 0.25, 2)).epsilon(1e-8));
  // distance ratio t/s
  const double s = 0.6;
  const double ratio = weighted_gradient_average(tent, {0.5, 0.25}, p2, RadialWeight::distance_ratio(s), Q);
  const Pts lin{{0, 0}, {2, 2 / s}};
  CHECK(ratio == doctest::Approx(ref::ball_average(lin, 0.5, 0.25, 2)).epsilon(1e-8));
}

TEST_CASE("averages match the test-side reference on random inputs") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 20; ++k) {
    auto prof = random_profile(rng, 6);
    const Pts pts = points_of(prof);
    const AxisBall b = random_ball(rng, prof.support_radius());
    for (int n : {2, 3}) {
      AmbientParams params(n, 0.5);
      CHECK(ball_average(prof, b, params, Q) ==
            doctest::Approx(ref::ball_average(pts, b.d, b.r, n, 1e-11)).epsilon(1e-7));
      CHECK(sphere_average(prof, b, params, Q) ==
            doctest::Approx(ref::sphere_average(pts, b.d, b.r, n, 1e-11)).epsilon(1e-7));
      const double ax = gradient_axial_component(prof, b, params, Q);
      const double rax = ref::gradient_axial(pts, b.d, b.r, n, 1e-11);
      CHECK(std::abs(ax - rax) <= 1e-7 * std::max(1.0, std::abs(rax)));
      const double rm = gradient_radial_moment(prof, b, params, Q);
      const double rrm = ref::gradient_radial(pts, b.d, b.r, n, 1e-11);
      CHECK(std::abs(rm - rrm) <= 1e-7 * std::max(1.0, std::abs(rrm)));
    }
  }
}

TEST_CASE("divergence identity on random triples") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 100; ++k) {
    auto prof = random_profile(rng, 6);
    const AxisBall b = random_ball(rng, prof.support_radius());
    const int n = 2 + k % 2;
    AmbientParams params(n, 0.5);
    const double lhs = b.d * gradient_axial_component(prof, b, params, Q) -
                       gradient_radial_moment(prof, b, params, Q);
    const double rhs = n * (ball_average(prof, b, params, Q) - sphere_average(prof, b, params, Q));
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-9 * prof.max_value()});
    CHECK(std::abs(lhs - rhs) / scale <= 1e-6);
  }
}

TEST_CASE("n = 1 is exact piecewise integration") {
  std::mt19937_64 rng(31);
  AmbientParams p1(1, 0.5);
  for (int k = 0; k < 50; ++k) {
    auto prof = random_profile(rng, 6);
    const Pts pts = points_of(prof);
    const AxisBall b = random_ball(rng, prof.support_radius());
    // Trapezoid rule is exact on linear pieces; split at every kink.
    std::vector<double> xs{b.d - b.r, b.d + b.r, 0.0};
    for (auto& q : pts) xs.push_back(q.first), xs.push_back(-q.first);
    std::sort(xs.begin(), xs.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double a = std::max(xs[i], b.d - b.r), c = std::min(xs[i + 1], b.d + b.r);
      if (c > a) sum += 0.5 * (c - a) * (ref::eval(pts, a) + ref::eval(pts, c));
    }
    CHECK(ball_average(prof, b, p1, Q) == doctest::Approx(sum / (2 * b.r)).epsilon(1e-12));
    // Endpoint formulas for the gradient.
    const double ax = (ref::eval(pts, b.d + b.r) - ref::eval(pts, b.d - b.r)) / (2 * b.r);
    CHECK(std::abs(gradient_axial_component(prof, b, p1, Q) - ax) <= 1e-12);
  }
}

TEST_CASE("interval_average") {
  auto tent = make(kTent);
  CHECK(interval_average(tent, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(interval_average(tent, 0.5, 2.0) == doctest::Approx(0.125 / 1.5));
}
