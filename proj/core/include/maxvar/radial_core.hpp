#pragma once

#include <span>
#include <utility>
#include <vector>

namespace maxvar {

/// Dimension n, fractional order beta and the constants derived from them.
///
/// q = n / (n - beta) is the target Lebesgue exponent of the variation bound;
/// it satisfies q * beta = n * (q - 1). omega() is the volume of the unit ball
/// in R^n and sigma() = n * omega() the surface measure of the unit sphere.
class AmbientParams {
 public:
  /// Throws ParameterError unless n >= 1 and 0 < beta < n.
  AmbientParams(int n, double beta);

  int n() const noexcept { return n_; }
  double beta() const noexcept { return beta_; }
  double q() const noexcept { return q_; }
  double omega() const noexcept { return omega_; }
  double sigma() const noexcept { return sigma_; }
  /// Surface measure of the unit sphere in R^(n-1); 2 when n = 2. Zero for n = 1.
  double sigma_lower() const noexcept { return sigma_lower_; }

 private:
  int n_;
  double beta_;
  double q_;
  double omega_;
  double sigma_;
  double sigma_lower_;
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// A knot of a radial profile. `left` and `right` are the one-sided limits of
/// F at `t`; they differ only at jump discontinuities. At t = 0 only `right`
/// carries meaning and `left == right`.
struct Knot {
  double t;
  double left;
  double right;

  bool operator==(const Knot&) const = default;
};

struct Interval {
  double lo;
  double hi;
};

/// Nonnegative, compactly supported, piecewise-linear radial profile F with
/// f(x) = F(|x|). Immutable after construction.
///
/// Knot radii start at 0 and strictly increase. Between consecutive knots F
/// is linear from `right` of the first to `left` of the second. F vanishes
/// beyond the last knot, whose `right` value is always 0.
class RadialProfile {
 public:
  /// Builds from (radius, value) points; see load_profile.
  static RadialProfile from_points(std::span<const std::pair<double, double>> points);

  std::span<const Knot> knots() const noexcept { return knots_; }
  std::size_t piece_count() const noexcept { return knots_.size() - 1; }
  double support_radius() const noexcept { return knots_.back().t; }
  double max_value() const noexcept { return max_value_; }

  /// F(t) for t >= 0. At a jump the mean of the one-sided limits is returned.
  double operator()(double t) const;

  /// Index of the linear piece containing t (t in [t_i, t_{i+1})), or
  /// piece_count() when t lies at or beyond the support radius.
  std::size_t piece_at(double t) const;

  /// Constant slope F' on piece i.
  double slope(std::size_t piece) const;
  /// Value of the linear extension of piece i at t.
  double piece_value(std::size_t piece, double t) const;

  /// a * F, a > 0.
  RadialProfile scaled(double a) const;
  /// t -> F(lambda * t), lambda > 0.
  RadialProfile dilated(double lambda) const;

  bool operator==(const RadialProfile&) const = default;

 private:
  explicit RadialProfile(std::vector<Knot> knots);
  friend RadialProfile load_profile(std::span<const std::pair<double, double>> points);

  std::vector<Knot> knots_;
  double max_value_ = 0.0;
};

/// Validates and normalizes a knot list into |F|.
///
/// Radii must be finite, nonnegative and non-decreasing. Negative values are
/// absolutized after inserting a knot at every zero crossing, so the stored
/// profile is exactly |F| of the piecewise-linear input. Repeated radii encode
/// a jump: the first value is the left limit and the last the right limit.
/// A profile that does not start at 0 is extended constantly down to 0; a
/// nonzero last value becomes a jump to 0. Throws ProfileError on decreasing
/// radii, non-finite input, or an identically zero profile.
RadialProfile load_profile(std::span<const std::pair<double, double>> points);

/// ||f||_{L^1(R^n)} = sigma_n * int F(t) t^(n-1) dt, in closed form.
double l1_norm(const RadialProfile& profile, const AmbientParams& params);

/// ||Df||_{L^1(R^n)} = sigma_n * int |F'(t)| t^(n-1) dt, in closed form.
/// Jumps contribute sigma_n * |jump| * t^(n-1) (total variation measure).
double gradient_l1_norm(const RadialProfile& profile, const AmbientParams& params);

/// Sorted, disjoint closed intervals of radii inside `window` on which
/// lo <= F(t) <= hi. A jump point belongs to the set when either one-sided
/// limit lies in [lo, hi].
std::vector<Interval> level_intervals(const RadialProfile& profile, double lo, double hi,
                                      Interval window);

/// Total length of the level set of values [lo, hi] swept by a jump between
/// values a and b, i.e. |[min(a,b), max(a,b)] ∩ [lo, hi]|.
double jump_overlap(double a, double b, double lo, double hi);

}  // namespace maxvar
