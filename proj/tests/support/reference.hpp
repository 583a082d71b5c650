#pragma once

// Test-side reference integrals. Deliberately shares nothing with the
// library: profiles are raw (radius, value) lists, integration is adaptive
// Simpson over Cartesian-style coordinates (axial x, transverse rho).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace ref {

using Points = std::vector<std::pair<double, double>>;

/// F(t) of a nonnegative piecewise-linear list; duplicate radii are jumps,
/// the value past the last radius is 0.
inline double eval(const Points& p, double t) {
  t = std::abs(t);
  if (t < p.front().first) return p.front().second;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto [t0, f0] = p[i];
    const auto [t1, f1] = p[i + 1];
    if (t >= t0 && t < t1) return f0 + (f1 - f0) * (t - t0) / (t1 - t0);
  }
  return 0.0;
}

/// F'(t); jumps are ignored, so only use on continuous lists.
inline double slope(const Points& p, double t) {
  t = std::abs(t);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto [t0, f0] = p[i];
    const auto [t1, f1] = p[i + 1];
    if (t >= t0 && t < t1) return (f1 - f0) / (t1 - t0);
  }
  return 0.0;
}

/// Tanh-sinh quadrature on [a, b]; copes with endpoint singularities such
/// as the square-root edges of spherical caps.
inline double quad(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
  const double scale = std::max(1e-300, std::abs(b - a));
  return ts.integrate(f, a, b, std::max(tol / scale, 1e-15));
}

/// Tanh-sinh on [a, b] split at every break inside it.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> breaks, double tol) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double sum = 0.0;
  double prev = a;
  for (double x : breaks) {
    if (x <= prev || x > b) continue;
    sum += quad(f, prev, x, tol);
    prev = x;
  }
  return sum;
}

inline double ball_volume(int n, double r) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(r, n);
}

/// Integral over B(d e, r) in R^n (n = 2, 3) of g(x, rho), where x is the
/// axial coordinate and rho the distance to the axis. Breaks sit where the
/// sphere |y| = t_k crosses the integration lines.
inline double ball_integral(const Points& p, double d, double r, int n,
                            const std::function<double(double, double)>& g, double tol) {
  const double pi = std::numbers::pi;
  // x = d - r cos(phi), rho up to h = r sin(phi).
  std::vector<double> outer_breaks;
  for (const auto& kp : p) {
    for (double x : {kp.first, -kp.first}) {
      const double c = (d - x) / r;
      if (c > -1.0 && c < 1.0) outer_breaks.push_back(std::acos(c));
    }
    // Where the sphere |y| = t_k meets the boundary of the ball.
    const double t = kp.first;
    if (d > 0) {
      const double c = (d * d + r * r - t * t) / (2.0 * d * r);
      if (c > -1.0 && c < 1.0) outer_breaks.push_back(std::acos(c));
    }
  }
  auto inner = [&](double phi) {
    const double x = d - r * std::cos(phi);
    const double h = r * std::sin(phi);
    std::vector<double> rb;
    for (const auto& kp : p) {
      const double t = kp.first;
      if (t > std::abs(x)) rb.push_back(std::sqrt(t * t - x * x));
    }
    auto slice = [&](double rho) {
      const double w = n == 2 ? 2.0 : 2.0 * pi * rho;
      return g(x, rho) * w;
    };
    return integrate(slice, 0.0, h, rb, 1e-3 * tol) * r * std::sin(phi);
  };
  return integrate(inner, 0.0, pi, outer_breaks, tol);
}

inline double ball_average(const Points& p, double d, double r, int n, double tol = 1e-12) {
  if (n == 1) {
    std::vector<double> br{0.0};
    for (const auto& kp : p) {
      br.push_back(kp.first);
      br.push_back(-kp.first);
    }
    return integrate([&](double u) { return eval(p, u); }, d - r, d + r, br, tol) / (2.0 * r);
  }
  auto g = [&](double x, double rho) { return eval(p, std::hypot(x, rho)); };
  return ball_integral(p, d, r, n, g, tol) / ball_volume(n, r);
}

/// Axial component of the average of Df.
inline double gradient_axial(const Points& p, double d, double r, int n, double tol = 1e-12) {
  auto g = [&](double x, double rho) {
    const double t = std::hypot(x, rho);
    return t > 0 ? slope(p, t) * x / t : 0.0;
  };
  return ball_integral(p, d, r, n, g, tol) / ball_volume(n, r);
}

/// Average of Df(y) . y.
inline double gradient_radial(const Points& p, double d, double r, int n, double tol = 1e-12) {
  auto g = [&](double x, double rho) { return slope(p, std::hypot(x, rho)) * std::hypot(x, rho); };
  return ball_integral(p, d, r, n, g, tol) / ball_volume(n, r);
}

/// Average of F over the sphere of radius r about d e (n = 2, 3).
inline double sphere_average(const Points& p, double d, double r, int n, double tol = 1e-12) {
  const double pi = std::numbers::pi;
  std::vector<double> br;
  for (const auto& kp : p) {
    const double t = kp.first;
    if (d > 0 && r > 0) {
      const double c = (t * t - d * d - r * r) / (2.0 * d * r);
      if (c > -1.0 && c < 1.0) br.push_back(std::acos(c));
    }
  }
  auto point = [&](double th) {
    const double x = d + r * std::cos(th);
    const double rho = r * std::sin(th);
    return eval(p, std::hypot(x, rho));
  };
  if (n == 2) return integrate(point, 0.0, pi, br, tol) / pi;
  return integrate([&](double th) { return point(th) * std::sin(th); }, 0.0, pi, br, tol) / 2.0;
}

/// sigma_n * int F(t) t^(n-1) dt.
inline double l1_norm(const Points& p, int n) {
  std::vector<double> br;
  for (const auto& kp : p) br.push_back(kp.first);
  const double sigma = n * ball_volume(n, 1.0);
  return sigma * integrate([&](double t) { return eval(p, t) * std::pow(t, n - 1); }, 0.0,
                           p.back().first, br, 1e-14);
}

}  // namespace ref
