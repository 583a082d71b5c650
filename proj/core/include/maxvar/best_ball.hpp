#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "maxvar/ball_geometry.hpp"
#include "maxvar/grid.hpp"
#include "maxvar/quadrature.hpp"
#include "maxvar/radial_core.hpp"

namespace maxvar {

/// Location class of a best ball relative to the origin. Points whose best
/// ball contains them in the interior have zero derivative; the others are
/// split by c = d / s into E1 (c > 5/4), E2 (c < 3/4) and E3 (in between).
enum class Region { zero_derivative, E1, E2, E3 };

inline constexpr double kRegionLowerC = 0.75;
inline constexpr double kRegionUpperC = 1.25;

std::string_view to_string(Region region);
Region classify_region(const Contact& contact);

/// Knobs of the best-ball search. Radii are searched on [r_min, s + T] with
/// r_min = r_min_fraction * T.
struct SearchConfig {
  int r_points_per_decade = 24;
  int d_points_per_row = 48;
  int multistarts = 8;
  /// Simplex diameter, in (log r, relative d) units, at which local
  /// refinement counts as converged.
  double local_tol = 1e-9;
  /// Relative objective gap under which two maxima count as tied.
  double tie_tol = 1e-9;
  double r_min_fraction = 1e-4;
  /// Contact tolerance relative to s + T.
  double contact_tol = 1e-9;
  int max_local_iterations = 500;
  /// Quadrature used on the coarse grid; refinement uses the caller's config.
  QuadratureConfig coarse = QuadratureConfig::optimizer();

  void validate() const;
};

struct BestBallResult {
  double s = 0.0;
  double value = 0.0;
  AxisBall ball{0.0, 1.0};
  Contact contact{ContactKind::interior, 0.0};
  Region region = Region::zero_derivative;
  long objective_evals = 0;
  bool converged = false;
  /// Several distinct balls attain the maximum within tie_tol; the smallest
  /// radius (then the smallest d) was kept.
  bool tie_ambiguous = false;
};

/// r^beta times the average of f over `ball`. Throws GeometryError when the
/// ball does not contain s e.
double objective(const RadialProfile& profile, double s, const AxisBall& ball,
                 const AmbientParams& params, const QuadratureConfig& cfg);

/// Global maximization of the objective over axis balls containing s e.
///
/// Stages: a coarse (log r, d) grid, a dedicated one-dimensional search along
/// each contact family d = s + r and d = s - r, and Nelder-Mead refinement
/// from the best grid cells and from any `hints`. Among maxima within
/// tie_tol the smallest radius wins.
BestBallResult search(const RadialProfile& profile, double s, const AmbientParams& params,
                      const SearchConfig& scfg, const QuadratureConfig& qcfg,
                      std::span<const AxisBall> hints = {});

/// Local-only search seeded from `hints`; returns whichever of `base` and
/// the refined candidates is better (ties keep `base`).
BestBallResult refine_from_hints(const RadialProfile& profile, const BestBallResult& base,
                                 const AmbientParams& params, const SearchConfig& scfg,
                                 const QuadratureConfig& qcfg, std::span<const AxisBall> hints);

/// Signed radial derivative m'(s) = r^beta * (average of Df · e over the best
/// ball). Exactly 0 for interior contact.
double derivative_by_formula(const RadialProfile& profile, const BestBallResult& result,
                             const AmbientParams& params, const QuadratureConfig& cfg);

struct FiniteDifference {
  std::vector<double> derivative;
  /// Best ball changes branch next to this point.
  std::vector<bool> corner;
};

struct MaximalProfile {
  std::vector<double> s;
  std::vector<double> m;
  std::vector<BestBallResult> results;
  std::vector<double> dm_fd;
  std::vector<double> dm_formula;
  std::vector<bool> corner;

  std::size_t size() const noexcept { return s.size(); }
};

/// Five-point differences of m on the (nonuniform) grid, centred in the
/// interior and shifted at the ends; exact for polynomials up to degree 4.
/// When per-point results are present, corners are flagged: every stencil
/// touching a change of contact kind, and every stencil straddling a move of
/// (d, r) larger than jump_threshold * r plus twice the grid step.
FiniteDifference derivative_by_fd(const MaximalProfile& mp, double jump_threshold = 0.1);

/// Searches every grid point (in parallel), then re-seeds each point from
/// its neighbours' best balls. Fills both derivative channels.
MaximalProfile maximal_profile(const RadialProfile& profile, const GridSpec& grid,
                               const AmbientParams& params, const SearchConfig& scfg,
                               const QuadratureConfig& qcfg, bool use_hints = true);

}  // namespace maxvar
