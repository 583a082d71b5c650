#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace maxvar {

/// Tolerances of the adaptive Gauss-Kronrod integrator.
struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  int max_subdivisions = 4000;

  /// Tight setting used by the identity suites.
  static QuadratureConfig identity() { return {1e-9, 1e-300, 4000}; }
  /// Loose setting used inside the optimizer's coarse stage.
  static QuadratureConfig optimizer() { return {1e-6, 1e-300, 400}; }

  /// Throws ParameterError unless tolerances are positive and the
  /// subdivision limit is at least `knot_count`.
  void validate(std::size_t knot_count = 0) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

/// Integrates `f` over [breaks.front(), breaks.back()] treating every entry
/// of `breaks` as a point where f may be non-smooth.
///
/// Each breakpoint-delimited piece is mapped through t = a + (b - a)(3u^2 - 2u^3),
/// which turns square-root endpoint behaviour (the cap kernels have it at
/// every regime boundary) into a smooth integrand. Pieces are bisected by a
/// global adaptive strategy until the summed error estimate is below
/// max(abs_tol, rel_tol * int |f|). Throws QuadratureError when
/// `max_subdivisions` is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                           const QuadratureConfig& cfg);

}  // namespace maxvar
