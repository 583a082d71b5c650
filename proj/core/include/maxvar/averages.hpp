#pragma once

#include <vector>

#include "maxvar/ball_geometry.hpp"
#include "maxvar/quadrature.hpp"
#include "maxvar/radial_core.hpp"

// Ball and sphere averages of a radial profile and of its gradient.
//
// For n >= 2 every n-dimensional integral over B(d e, r) is reduced to a
// one-dimensional integral in t = |y| against the spherical-cap kernels of
// ball_geometry. Gradient integrals use the exact piecewise-constant slope of
// the profile; jumps contribute point masses. For n = 1 everything is exact
// piecewise integration of the even extension f(u) = F(|u|).

namespace maxvar {

/// Largest dimension the cap kernels are validated for.
inline constexpr int kMaxDimension = 10;

/// Radial weight w(t) for weighted_gradient_average.
class RadialWeight {
 public:
  /// w(t) = t / s.
  static RadialWeight distance_ratio(double s);
  /// Indicator of a level set {lo <= F <= hi}, described by its radius
  /// intervals (as returned by level_intervals). Jumps of F contribute the
  /// part of their value range that falls inside [lo, hi].
  static RadialWeight level_set(std::vector<Interval> intervals, double lo, double hi);
  /// w = 1.
  static RadialWeight unit();

  double operator()(double t) const;
  /// Weight applied to a jump from value a to value b at radius t.
  double jump_weight(double t, double a, double b) const;
  /// Integral of w over [t0, t1] (exact).
  double integral(double t0, double t1) const;
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool is_level_set() const noexcept { return kind_ == Kind::level_set; }

 private:
  enum class Kind { unit, distance_ratio, level_set };
  Kind kind_ = Kind::unit;
  double s_ = 1.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<Interval> intervals_;
};

/// |f|_B, the integral average of f over B(d e, r).
double ball_average(const RadialProfile& profile, const AxisBall& ball,
                    const AmbientParams& params, const QuadratureConfig& cfg);

/// Average of f over the sphere ∂B(d e, r).
double sphere_average(const RadialProfile& profile, const AxisBall& ball,
                      const AmbientParams& params, const QuadratureConfig& cfg);

/// e-component of the average of Df over the ball. By rotational symmetry
/// the other components vanish, so this is the whole vector.
double gradient_axial_component(const RadialProfile& profile, const AxisBall& ball,
                                const AmbientParams& params, const QuadratureConfig& cfg);

/// Average of Df(y) · y over the ball.
double gradient_radial_moment(const RadialProfile& profile, const AxisBall& ball,
                              const AmbientParams& params, const QuadratureConfig& cfg);

/// Average of |Df(y)| w(|y|) over the ball.
double weighted_gradient_average(const RadialProfile& profile, const AxisBall& ball,
                                 const AmbientParams& params, const RadialWeight& weight,
                                 const QuadratureConfig& cfg);

/// Average of F over the radius interval [a, b] (one-dimensional, exact).
double interval_average(const RadialProfile& profile, double a, double b);

}  // namespace maxvar
