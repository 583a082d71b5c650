#include "maxvar/averages.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "maxvar/error.hpp"
#include "monomial.hpp"

namespace maxvar {
namespace {

void check_inputs(const RadialProfile& profile, const AxisBall& ball, const AmbientParams& params,
                  const QuadratureConfig& cfg) {
  if (params.n() > kMaxDimension) {
    throw ParameterError("dimension " + std::to_string(params.n()) +
                         " exceeds the supported maximum of " + std::to_string(kMaxDimension));
  }
  if (!(ball.r > 0.0) || !(ball.d >= 0.0) || !std::isfinite(ball.r) || !std::isfinite(ball.d)) {
    throw GeometryError("ball needs d >= 0 and r > 0");
  }
  cfg.validate(profile.knots().size());
}

double ball_volume(const AmbientParams& params, double r) {
  return params.omega() * detail::int_pow(r, params.n());
}

/// Breakpoints for a radial integral over [lo, hi]: the ends, every knot
/// strictly inside, and every extra point strictly inside.
std::vector<double> radial_breaks(const RadialProfile& profile, double lo, double hi,
                                  std::initializer_list<double> extra,
                                  const std::vector<Interval>* intervals = nullptr) {
  std::vector<double> b;
  b.push_back(lo);
  for (const Knot& k : profile.knots()) {
    if (k.t > lo && k.t < hi) b.push_back(k.t);
  }
  for (double e : extra) {
    if (e > lo && e < hi) b.push_back(e);
  }
  if (intervals != nullptr) {
    for (const Interval& iv : *intervals) {
      if (iv.lo > lo && iv.lo < hi) b.push_back(iv.lo);
      if (iv.hi > lo && iv.hi < hi) b.push_back(iv.hi);
    }
  }
  b.push_back(hi);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

/// Copy of cfg whose absolute target is rel_tol * 1e-3 of `magnitude`, the
/// size of the integral with the integrand at its peak. Narrow cap windows
/// far from the origin cannot be resolved to full relative accuracy.
QuadratureConfig floored(const QuadratureConfig& cfg, double magnitude) {
  QuadratureConfig c = cfg;
  c.abs_tol = std::max(cfg.abs_tol, 1e-3 * cfg.rel_tol * magnitude);
  return c;
}

double max_abs_slope(const RadialProfile& profile) {
  double m = 0.0;
  for (std::size_t i = 0; i < profile.piece_count(); ++i) m = std::max(m, std::abs(profile.slope(i)));
  return m;
}

struct RadialRange {
  double lo;
  double hi;
  bool empty() const { return !(hi > lo); }
};

/// Radii met by the ball, clipped to the support of the profile.
RadialRange ball_range(const RadialProfile& profile, const AxisBall& ball) {
  return {std::max(0.0, ball.d - ball.r), std::min(ball.d + ball.r, profile.support_radius())};
}

/// Sum over the jumps strictly inside (lo, hi] of g(t, left, right).
template <class G>
double jump_sum(const RadialProfile& profile, double lo, double hi, G&& g) {
  double sum = 0.0;
  const auto knots = profile.knots();
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const Knot& k = knots[i];
    if (k.left != k.right && k.t > lo && k.t <= hi) sum += g(k.t, k.left, k.right);
  }
  return sum;
}

// ---- n = 1: exact piecewise integration of the even extension ----

/// int_0^t F.
double primitive(const RadialProfile& profile, double t) {
  const auto knots = profile.knots();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double t0 = knots[i].t;
    if (t <= t0) break;
    const double t1 = std::min(knots[i + 1].t, t);
    const double f0 = knots[i].right;
    const double f1 = profile.piece_value(i, t1);
    sum += 0.5 * (f0 + f1) * (t1 - t0);
  }
  return sum;
}

/// Odd primitive of f(u) = F(|u|).
double even_primitive(const RadialProfile& profile, double u) {
  return u >= 0.0 ? primitive(profile, u) : -primitive(profile, -u);
}

/// int_0^t |F'| w + jumps in (0, t].
double weighted_variation(const RadialProfile& profile, const RadialWeight& w, double t) {
  const auto knots = profile.knots();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double t0 = knots[i].t;
    if (t <= t0) break;
    const double t1 = std::min(knots[i + 1].t, t);
    sum += std::abs(profile.slope(i)) * w.integral(t0, t1);
  }
  sum += jump_sum(profile, 0.0, t, [&](double tj, double a, double b) {
    return w.jump_weight(tj, a, b);
  });
  return sum;
}

double ball_average_1d(const RadialProfile& p, const AxisBall& b) {
  return (even_primitive(p, b.d + b.r) - even_primitive(p, b.d - b.r)) / (2.0 * b.r);
}

}  // namespace

// ---------------------------------------------------------------------------

RadialWeight RadialWeight::distance_ratio(double s) {
  if (!(s > 0.0)) throw ParameterError("distance-ratio weight needs s > 0");
  RadialWeight w;
  w.kind_ = Kind::distance_ratio;
  w.s_ = s;
  return w;
}

RadialWeight RadialWeight::level_set(std::vector<Interval> intervals, double lo, double hi) {
  RadialWeight w;
  w.kind_ = Kind::level_set;
  w.intervals_ = std::move(intervals);
  w.lo_ = lo;
  w.hi_ = hi;
  return w;
}

RadialWeight RadialWeight::unit() { return {}; }

double RadialWeight::operator()(double t) const {
  switch (kind_) {
    case Kind::unit: return 1.0;
    case Kind::distance_ratio: return t / s_;
    case Kind::level_set:
      for (const Interval& iv : intervals_) {
        if (t >= iv.lo && t <= iv.hi) return 1.0;
      }
      return 0.0;
  }
  return 0.0;
}

double RadialWeight::jump_weight(double t, double a, double b) const {
  switch (kind_) {
    case Kind::unit: return std::abs(b - a);
    case Kind::distance_ratio: return std::abs(b - a) * t / s_;
    case Kind::level_set: return jump_overlap(a, b, lo_, hi_);
  }
  return 0.0;
}

double RadialWeight::integral(double t0, double t1) const {
  if (t1 <= t0) return 0.0;
  switch (kind_) {
    case Kind::unit: return t1 - t0;
    case Kind::distance_ratio: return 0.5 * (t1 - t0) * (t1 + t0) / s_;
    case Kind::level_set: {
      double sum = 0.0;
      for (const Interval& iv : intervals_) sum += std::max(0.0, std::min(t1, iv.hi) - std::max(t0, iv.lo));
      return sum;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

double ball_average(const RadialProfile& profile, const AxisBall& ball,
                    const AmbientParams& params, const QuadratureConfig& cfg) {
  check_inputs(profile, ball, params, cfg);
  if (params.n() == 1) return ball_average_1d(profile, ball);
  const RadialRange range = ball_range(profile, ball);
  if (range.empty()) return 0.0;
  const double d = ball.d, r = ball.r;
  const auto breaks = radial_breaks(profile, range.lo, range.hi, {std::abs(d - r), d + r});
  const auto res = integrate(
      [&](double t) {
        const std::size_t i = profile.piece_at(t);
        if (i == profile.piece_count()) return 0.0;
        return profile.piece_value(i, t) * cap_area(t, d, r, params);
      },
      breaks, floored(cfg, profile.max_value() * ball_volume(params, r)));
  return res.value / ball_volume(params, r);
}

double sphere_average(const RadialProfile& profile, const AxisBall& ball,
                      const AmbientParams& params, const QuadratureConfig& cfg) {
  check_inputs(profile, ball, params, cfg);
  const double d = ball.d, r = ball.r;
  if (params.n() == 1) return 0.5 * (profile(std::abs(d - r)) + profile(d + r));
  if (d == 0.0) return profile(r);

  // Angle phi between y - z and e; |y|^2 = d^2 + r^2 + 2 d r cos(phi).
  std::vector<double> breaks{0.0};
  for (const Knot& k : profile.knots()) {
    const double c = ((k.t - d) * (k.t + d) - r * r) / (2.0 * d * r);
    if (c > -1.0 && c < 1.0) breaks.push_back(std::acos(c));
  }
  breaks.push_back(std::numbers::pi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const int k = params.n() - 2;
  const auto res = integrate(
      [&](double phi) {
        const double rho = std::sqrt(std::max(0.0, d * d + r * r + 2.0 * d * r * std::cos(phi)));
        return profile(rho) * detail::int_pow(std::sin(phi), k);
      },
      breaks, floored(cfg, std::numbers::pi * profile.max_value()));
  return params.sigma_lower() / params.sigma() * res.value;
}

double gradient_axial_component(const RadialProfile& profile, const AxisBall& ball,
                                const AmbientParams& params, const QuadratureConfig& cfg) {
  check_inputs(profile, ball, params, cfg);
  const double d = ball.d, r = ball.r;
  if (params.n() == 1) return (profile(d + r) - profile(std::abs(d - r))) / (2.0 * r);
  const RadialRange range = ball_range(profile, ball);
  if (range.empty() || d == 0.0) return 0.0;
  const auto breaks = radial_breaks(profile, range.lo, range.hi, {std::abs(d - r), d + r});
  const auto res = integrate(
      [&](double t) {
        const std::size_t i = profile.piece_at(t);
        if (i == profile.piece_count()) return 0.0;
        return profile.slope(i) * cap_first_moment(t, d, r, params);
      },
      breaks, floored(cfg, max_abs_slope(profile) * ball_volume(params, r)));
  const double jumps = jump_sum(profile, range.lo, d + r, [&](double t, double a, double b) {
    return (b - a) * cap_first_moment(t, d, r, params);
  });
  return (res.value + jumps) / ball_volume(params, r);
}

double gradient_radial_moment(const RadialProfile& profile, const AxisBall& ball,
                              const AmbientParams& params, const QuadratureConfig& cfg) {
  check_inputs(profile, ball, params, cfg);
  const double d = ball.d, r = ball.r;
  if (params.n() == 1) {
    const double a = d - r, b = d + r;
    const double boundary = b * profile(b) - a * profile(std::abs(a));
    return (boundary - (even_primitive(profile, b) - even_primitive(profile, a))) / (2.0 * r);
  }
  const RadialRange range = ball_range(profile, ball);
  if (range.empty()) return 0.0;
  const auto breaks = radial_breaks(profile, range.lo, range.hi, {std::abs(d - r), d + r});
  const auto res = integrate(
      [&](double t) {
        const std::size_t i = profile.piece_at(t);
        if (i == profile.piece_count()) return 0.0;
        return profile.slope(i) * t * cap_area(t, d, r, params);
      },
      breaks, floored(cfg, max_abs_slope(profile) * range.hi * ball_volume(params, r)));
  const double jumps = jump_sum(profile, range.lo, d + r, [&](double t, double a, double b) {
    return (b - a) * t * cap_area(t, d, r, params);
  });
  return (res.value + jumps) / ball_volume(params, r);
}

double weighted_gradient_average(const RadialProfile& profile, const AxisBall& ball,
                                 const AmbientParams& params, const RadialWeight& weight,
                                 const QuadratureConfig& cfg) {
  check_inputs(profile, ball, params, cfg);
  const double d = ball.d, r = ball.r;
  if (params.n() == 1) {
    const double a = d - r, b = d + r;
    const double total = a >= 0.0
                             ? weighted_variation(profile, weight, b) -
                                   weighted_variation(profile, weight, a)
                             : weighted_variation(profile, weight, -a) +
                                   weighted_variation(profile, weight, b);
    return total / (2.0 * r);
  }
  const RadialRange range = ball_range(profile, ball);
  if (range.empty()) return 0.0;
  const auto* ivs = weight.is_level_set() ? &weight.intervals() : nullptr;
  const auto breaks = radial_breaks(profile, range.lo, range.hi, {std::abs(d - r), d + r}, ivs);
  const auto res = integrate(
      [&](double t) {
        const std::size_t i = profile.piece_at(t);
        if (i == profile.piece_count()) return 0.0;
        const double w = weight(t);
        if (w == 0.0) return 0.0;
        return std::abs(profile.slope(i)) * w * cap_area(t, d, r, params);
      },
      breaks,
      floored(cfg, max_abs_slope(profile) * std::max(1.0, weight(range.hi)) * ball_volume(params, r)));
  const double jumps = jump_sum(profile, range.lo, d + r, [&](double t, double a, double b) {
    return weight.jump_weight(t, a, b) * cap_area(t, d, r, params);
  });
  return (res.value + jumps) / ball_volume(params, r);
}

double interval_average(const RadialProfile& profile, double a, double b) {
  if (!(b > a) || a < 0.0) throw GeometryError("interval average needs 0 <= a < b");
  return (primitive(profile, b) - primitive(profile, a)) / (b - a);
}

}  // namespace maxvar
