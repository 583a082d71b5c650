#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maxvar/ball_geometry.hpp"
#include "maxvar/error.hpp"
#include "reference.hpp"

using namespace maxvar;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("cap_angle") {
  CHECK(cap_angle(0.5, 3.0, 1.0) == 0.0);
  CHECK(cap_angle(0.5, 0.1, 1.0) == doctest::Approx(pi));
  CHECK(cap_angle(1.0, 1.0, 1.0) == doctest::Approx(pi / 3));
}

TEST_CASE("cap_area examples") {
  CHECK(cap_area(0.5, 0.0, 1.0, AmbientParams(3, 1.0)) == doctest::Approx(pi));
  CHECK(cap_area(2.0, 0.5, 1.0, AmbientParams(2, 1.0)) == 0.0);
  CHECK(cap_area(1.0, 1.0, 1.0, AmbientParams(3, 1.0)) == doctest::Approx(pi));
  CHECK(cap_area(0.0, 0.5, 1.0, AmbientParams(2, 1.0)) == 0.0);
}

TEST_CASE("cap_first_moment examples") {
  CHECK(cap_first_moment(0.5, 0.0, 1.0, AmbientParams(3, 1.0)) == doctest::Approx(0.0));
  CHECK(cap_first_moment(0.5, 0.2, 2.0, AmbientParams(3, 1.0)) == doctest::Approx(0.0));
  CHECK(cap_first_moment(5.0, 0.2, 1.0, AmbientParams(3, 1.0)) == 0.0);
  CHECK(cap_first_moment(1.0, 1.0, 1.0, AmbientParams(3, 1.0)) == doctest::Approx(3 * pi / 4));
}

TEST_CASE("cap kernels against sphere sampling") {
  // Uniform points on the unit sphere in R^3, scaled to radius t.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const double t = 1.0, d = 1.0, r = 1.0;
  long inside = 0;
  double moment = 0.0, moment2 = 0.0;
  const long N = 1000000;
  for (long i = 0; i < N; ++i) {
    double x = g(rng), y = g(rng), z = g(rng);
    const double len = std::sqrt(x * x + y * y + z * z);
    x *= t / len, y *= t / len, z *= t / len;
    if ((x - d) * (x - d) + y * y + z * z <= r * r) {
      ++inside;
      const double c = x / t;
      moment += c;
      moment2 += c * c;
    }
  }
  const double area = 4 * pi * t * t;
  const double p = double(inside) / N;
  const double se_area = area * std::sqrt(p * (1 - p) / N);
  CHECK(std::abs(area * p - cap_area(t, d, r, AmbientParams(3, 1.0))) < 3 * se_area);
  const double mean = moment / N, var = moment2 / N - mean * mean;
  const double se_m = area * std::sqrt(var / N);
  CHECK(std::abs(area * mean - cap_first_moment(t, d, r, AmbientParams(3, 1.0))) < 3 * se_m);
}

TEST_CASE("cap kernel properties") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n : {2, 3, 4, 5, 7, 10}) {
    AmbientParams params(n, 1.0);
    for (int k = 0; k < 40; ++k) {
      const double d = 2.0 * u(rng), r = 0.05 + 2.0 * u(rng), t = 3.0 * u(rng);
      const double a = cap_area(t, d, r, params);
      CHECK(a >= 0.0);
      CHECK(cap_area(t, d, r * 1.1, params) >= a * (1 - 1e-14));
      const double m = cap_first_moment(t, d, r, params);
      CHECK(m >= -1e-14 * a);
      CHECK(m <= a * (1 + 1e-14) + 1e-300);
      if (t + d <= r) CHECK(a == doctest::Approx(params.sigma() * std::pow(t, n - 1)));
      // Ball volume from the kernel.
      std::vector<double> br{std::abs(d - r), d + r};
      const double vol = ref::integrate([&](double s) { return cap_area(s, d, r, params); }, 0.0,
                                        d + r, br, 1e-13 * std::pow(r, n));
      CHECK(vol == doctest::Approx(params.omega() * std::pow(r, n)).epsilon(1e-10));
    }
  }
}

TEST_CASE("cap_angle continuity across clamps") {
  const double d = 1.0, r = 0.6;
  for (double edge : {d - r, d + r}) {
    const double below = cap_angle(edge - 1e-12, d, r);
    const double above = cap_angle(edge + 1e-12, d, r);
    CHECK(std::abs(below - above) <= 1e-5);  // sqrt-type behaviour at the clamp
  }
  // Sampled: consecutive angles never jump.
  double prev = cap_angle(1e-6, d, r);
  for (int i = 1; i <= 200000; ++i) {
    const double t = 1e-6 + 2.0 * i / 200000;
    const double cur = cap_angle(t, d, r);
    CHECK(std::abs(cur - prev) < 1e-2);
    prev = cur;
  }
}

TEST_CASE("sin_power_integral") {
  CHECK(sin_power_integral(0, 1.0) == doctest::Approx(1.0));
  CHECK(sin_power_integral(1, pi) == doctest::Approx(2.0));
  CHECK(sin_power_integral(2, pi) == doctest::Approx(pi / 2));
  for (int k : {3, 5, 8}) {
    const double th = 2.1;
    const double num = ref::quad([&](double p) { return std::pow(std::sin(p), k); }, 0, th, 1e-14);
    CHECK(sin_power_integral(k, th) == doctest::Approx(num).epsilon(1e-12));
  }
}

TEST_CASE("classify_contact") {
  auto c = classify_contact({0, 1}, 0.5, 1e-12);
  CHECK(c.kind == ContactKind::interior);
  c = classify_contact({1.5, 0.5}, 1.0, 1e-12);
  CHECK(c.kind == ContactKind::boundary_outer);
  CHECK(c.c == doctest::Approx(1.5));
  c = classify_contact({0.5, 0.5}, 1.0, 1e-12);
  CHECK(c.kind == ContactKind::boundary_inner);
  CHECK(c.c == doctest::Approx(0.5));
  CHECK(classify_contact({0.3, 1.0}, 0.0, 1e-12).kind == ContactKind::interior);
  CHECK_THROWS_AS(classify_contact({3.0, 1.0}, 1.0, 1e-12), GeometryError);
  CHECK(contains_point({3.0, 1.0}, 2.0));
  CHECK_FALSE(contains_point({3.0, 1.0}, 1.5));
}
