#pragma once

#include <cstdint>

#include "maxvar/ball_geometry.hpp"
#include "maxvar/radial_core.hpp"

// Slow reference implementations. None of them uses the cap kernels, the
// adaptive quadrature or the best-ball search.

namespace maxvar {

struct Oracle1dResult {
  double value = 0.0;
  /// Maximizing interval [a, b], a <= x <= b.
  double a = 0.0;
  double b = 0.0;
};

/// n = 1 maximal function of f(u) = F(|u|) at x: brute-force maximum of
/// ((b - a)/2)^beta * average of f over [a, b] over a resolution^2 endpoint
/// grid on [-(|x| + T), |x| + T], followed by zoom refinement.
Oracle1dResult oracle_1d_maximal(const RadialProfile& profile, double x, double beta,
                                 int resolution = 2000);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Uniform sampling of B(d e, r) in R^n. Samples are drawn in fixed-size
/// chunks, each with its own seeded stream, so the result does not depend on
/// the thread count.
MonteCarloEstimate oracle_mc_ball_average(const RadialProfile& profile, const AxisBall& ball,
                                          const AmbientParams& params, long samples,
                                          std::uint64_t seed);

/// n = 2 average over the disc by polar coordinates about its centre:
/// midpoint rule in the radius, trapezoid rule in the angle.
double oracle_dense_average_2d(const RadialProfile& profile, const AxisBall& ball,
                               int resolution = 2000);

}  // namespace maxvar
