#include "maxvar/radial_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "maxvar/error.hpp"
#include "monomial.hpp"

namespace maxvar {

double unit_ball_volume(int n) {
  const double half = 0.5 * n;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

AmbientParams::AmbientParams(int n, double beta) : n_(n), beta_(beta) {
  if (n < 1) throw ParameterError("dimension n must be >= 1, got " + std::to_string(n));
  if (!std::isfinite(beta) || !(beta > 0.0) || !(beta < n)) {
    throw ParameterError("fractional order beta must satisfy 0 < beta < n (n = " +
                         std::to_string(n) + ", beta = " + std::to_string(beta) + ")");
  }
  q_ = n / (n - beta);
  omega_ = unit_ball_volume(n);
  sigma_ = n * omega_;
  sigma_lower_ = n >= 2 ? (n - 1) * unit_ball_volume(n - 1) : 0.0;
}

RadialProfile::RadialProfile(std::vector<Knot> knots) : knots_(std::move(knots)) {
  for (const Knot& k : knots_) max_value_ = std::max({max_value_, k.left, k.right});
}

RadialProfile RadialProfile::from_points(std::span<const std::pair<double, double>> points) {
  return load_profile(points);
}

std::size_t RadialProfile::piece_at(double t) const {
  if (t >= knots_.back().t) return piece_count();
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double v, const Knot& k) { return v < k.t; });
  if (it == knots_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
}

double RadialProfile::slope(std::size_t piece) const {
  const Knot& a = knots_[piece];
  const Knot& b = knots_[piece + 1];
  return (b.left - a.right) / (b.t - a.t);
}

double RadialProfile::piece_value(std::size_t piece, double t) const {
  const Knot& a = knots_[piece];
  const Knot& b = knots_[piece + 1];
  const double w = (t - a.t) / (b.t - a.t);
  return a.right + w * (b.left - a.right);
}

double RadialProfile::operator()(double t) const {
  if (t < 0.0) t = -t;
  const std::size_t i = piece_at(t);
  if (i == piece_count()) {
    return t == knots_.back().t ? 0.5 * knots_.back().left : 0.0;
  }
  const Knot& a = knots_[i];
  if (t == a.t) return 0.5 * (a.left + a.right);
  return piece_value(i, t);
}

RadialProfile RadialProfile::scaled(double a) const {
  if (!(a > 0.0) || !std::isfinite(a)) throw ProfileError("scale factor must be positive");
  std::vector<Knot> k = knots_;
  for (Knot& x : k) {
    x.left *= a;
    x.right *= a;
  }
  return RadialProfile(std::move(k));
}

RadialProfile RadialProfile::dilated(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ProfileError("dilation factor must be positive");
  }
  std::vector<Knot> k = knots_;
  for (Knot& x : k) x.t /= lambda;
  return RadialProfile(std::move(k));
}

RadialProfile load_profile(std::span<const std::pair<double, double>> points) {
  if (points.empty()) throw ProfileError("profile has no knots");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [t, v] = points[i];
    if (!std::isfinite(t) || !std::isfinite(v)) throw ProfileError("profile knot is not finite");
    if (t < 0.0) throw ProfileError("profile radius is negative");
    if (i > 0 && t < points[i - 1].first) {
      throw ProfileError("profile radii decrease at knot " + std::to_string(i));
    }
  }

  // Signed input with zero crossings made explicit.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(2 * points.size() + 1);
  if (points.front().first > 0.0) pts.emplace_back(0.0, points.front().second);
  for (const auto& p : points) {
    if (!pts.empty()) {
      const auto [t0, v0] = pts.back();
      const auto [t1, v1] = p;
      if (t1 > t0 && ((v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0))) {
        const double tz = t0 + (t1 - t0) * (v0 / (v0 - v1));
        if (tz > t0 && tz < t1) pts.emplace_back(tz, 0.0);
      }
    }
    pts.push_back(p);
  }

  std::vector<Knot> knots;
  for (std::size_t i = 0; i < pts.size();) {
    std::size_t j = i;
    while (j + 1 < pts.size() && pts[j + 1].first == pts[i].first) ++j;
    const double t = pts[i].first;
    double left = std::abs(pts[i].second);
    const double right = std::abs(pts[j].second);
    if (knots.empty()) left = right;
    knots.push_back({t, left, right});
    i = j + 1;
  }
  knots.back().right = 0.0;
  if (knots.size() == 1) {
    // A single radius carries no area; t = 0 alone is degenerate.
    throw ProfileError("profile is identically zero");
  }

  // Trim trailing zero pieces so the last knot is the support radius.
  while (knots.size() > 2) {
    const Knot& last = knots.back();
    const Knot& prev = knots[knots.size() - 2];
    if (last.left == 0.0 && prev.right == 0.0) {
      knots.pop_back();
      knots.back().right = 0.0;
    } else {
      break;
    }
  }
  bool any = false;
  for (const Knot& k : knots) any = any || k.left > 0.0 || k.right > 0.0;
  if (!any) throw ProfileError("profile is identically zero");
  return RadialProfile(std::move(knots));
}

double l1_norm(const RadialProfile& profile, const AmbientParams& params) {
  const int n = params.n();
  const auto knots = profile.knots();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double t0 = knots[i].t;
    const double h = knots[i + 1].t - t0;
    const auto m = detail::linear_moments(t0, h, n);
    sum += (knots[i].right * m.falling + knots[i + 1].left * m.rising) / h;
  }
  return params.sigma() * sum;
}

double gradient_l1_norm(const RadialProfile& profile, const AmbientParams& params) {
  const int n = params.n();
  const auto knots = profile.knots();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double t0 = knots[i].t;
    const double h = knots[i + 1].t - t0;
    sum += std::abs(profile.slope(i)) * detail::power_integral(t0, h, n);
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double jump = std::abs(knots[i].right - knots[i].left);
    if (jump > 0.0) sum += jump * detail::int_pow(knots[i].t, n - 1);
  }
  return params.sigma() * sum;
}

double jump_overlap(double a, double b, double lo, double hi) {
  const double low = std::max(std::min(a, b), lo);
  const double high = std::min(std::max(a, b), hi);
  return std::max(0.0, high - low);
}

std::vector<Interval> level_intervals(const RadialProfile& profile, double lo, double hi,
                                      Interval window) {
  std::vector<Interval> raw;
  if (lo > hi || window.lo > window.hi) return raw;
  const auto knots = profile.knots();
  auto add = [&](double a, double b) {
    a = std::max(a, window.lo);
    b = std::min(b, window.hi);
    if (a <= b) raw.push_back({a, b});
  };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double t0 = knots[i].t;
    const double t1 = knots[i + 1].t;
    if (t1 < window.lo || t0 > window.hi) continue;
    const double fa = knots[i].right;
    const double fb = knots[i + 1].left;
    const double vmin = std::max(std::min(fa, fb), lo);
    const double vmax = std::min(std::max(fa, fb), hi);
    if (vmin > vmax) continue;
    if (fa == fb) {
      add(t0, t1);
      continue;
    }
    auto at = [&](double v) {
      const double w = std::clamp((v - fa) / (fb - fa), 0.0, 1.0);
      return w == 1.0 ? t1 : t0 + w * (t1 - t0);
    };
    const double ta = at(vmin);
    const double tb = at(vmax);
    add(std::min(ta, tb), std::max(ta, tb));
  }
  const double support = profile.support_radius();
  if (lo <= 0.0 && hi >= 0.0 && window.hi >= support) add(support, window.hi);

  std::sort(raw.begin(), raw.end(), [](const Interval& x, const Interval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  std::vector<Interval> merged;
  for (const Interval& iv : raw) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

}  // namespace maxvar
