#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxvar/averages.hpp"
#include "maxvar/best_ball.hpp"
#include "maxvar/grid.hpp"

namespace maxvar {

enum class CheckStatus { passed, failed, not_applicable, informational };

std::string_view to_string(CheckStatus status);

struct IdentityReport {
  std::string name;
  std::string inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  CheckStatus status = CheckStatus::failed;
  /// Monitored quantity for checks whose constant is not explicit.
  std::optional<double> ratio;
};

inline constexpr double kRelativeFloor = 1e-300;
inline constexpr double kQuadratureIdentityTol = 1e-6;
inline constexpr double kBestBallIdentityTol = 1e-3;
inline constexpr double kInequalitySlack = 1e-6;
/// Near-zero pairs are compared absolutely at this multiple of max F.
inline constexpr double kNearZeroScale = 1e-9;

/// lhs == rhs up to `tol` relative, or up to `zero_tol` absolute when both
/// sides are below `zero_tol`.
IdentityReport equality_report(std::string name, std::string inputs, double lhs, double rhs,
                               double tol, double zero_tol);

/// d * axial - radial moment = n (ball average - sphere average), any ball.
IdentityReport check_divergence(const RadialProfile& profile, const AxisBall& ball,
                                const AmbientParams& params, const QuadratureConfig& qcfg,
                                double tol = kQuadratureIdentityTol);

/// Ball average = -(1/beta) * average of Df · (y - x) at a best ball.
/// Informational when s = 0.
IdentityReport check_stationarity(const RadialProfile& profile, const BestBallResult& result,
                                  const AmbientParams& params, const QuadratureConfig& qcfg,
                                  double tol = kBestBallIdentityTol);

/// Derivative at h = 0 of the objective along y -> y + h (y - x), by
/// Richardson-extrapolated central differences, against
/// r^beta * avg(Df · (y - x)) + beta * value. With `at_best_ball` both sides
/// must also vanish within tol * beta * value.
IdentityReport check_affine_family(const RadialProfile& profile, double s, const AxisBall& ball,
                                   const AmbientParams& params, const QuadratureConfig& qcfg,
                                   bool at_best_ball, double tol = kBestBallIdentityTol);

/// |avg Df| = (n/r) [(1 - beta/n) avg f - sphere avg f] at a best ball.
IdentityReport check_boundary_formula(const RadialProfile& profile, const BestBallResult& result,
                                      const AmbientParams& params, const QuadratureConfig& qcfg,
                                      double tol = kBestBallIdentityTol);

/// |avg Df| <= avg |Df| |y|/s for a boundary best ball inside B(0, s).
IdentityReport check_inner_bound(const RadialProfile& profile, const BestBallResult& result,
                                 const AmbientParams& params, const QuadratureConfig& qcfg);

/// For a boundary best ball with r <= s/4: the level-set gradient average
/// over 2B is positive whenever |avg Df| > 1e-8; the ratio is reported.
IdentityReport check_key_lemma(const RadialProfile& profile, const BestBallResult& result,
                               const AmbientParams& params, const QuadratureConfig& qcfg);

/// avg_{B2} f >= 2^-n (r1/r2)^beta avg_{B1} f for best balls with B2 in 2 B1.
IdentityReport check_ball_comparison(const RadialProfile& profile, const BestBallResult& first,
                                     const BestBallResult& second, const AmbientParams& params,
                                     const QuadratureConfig& qcfg);

/// Ratio of the 1D average of F over [d - r, d + r] to the average of f over
/// B(d, 2r); applicable when r <= d/2.
IdentityReport check_annulus_average(const RadialProfile& profile, const AxisBall& ball,
                                     const AmbientParams& params, const QuadratureConfig& qcfg);

/// Same best ball with r scaled by 1.05 (0.95 when that breaks the inner
/// contact), keeping the point on the boundary.
AxisBall perturbed_contact_ball(const BestBallResult& result);

/// Wraps a check run on a perturbed ball: passes iff the wrapped check fails.
IdentityReport negative_control(IdentityReport underlying);

enum class Suite { all, divergence, stationarity, boundary, inner, keylemma, comparison, annulus };

std::string_view to_string(Suite suite);
Suite parse_suite(std::string_view text);

struct SuiteOptions {
  std::uint64_t seed = 1;
  int random_balls = 100;
  GridSpec grid;  // defaults to GridSpec::standard(T, 32) when count == 0
  SearchConfig search;
  QuadratureConfig quadrature = QuadratureConfig::identity();
  bool negative_controls = true;
};

struct SuiteResult {
  std::vector<IdentityReport> reports;

  int count(CheckStatus status) const;
  bool all_passed() const { return count(CheckStatus::failed) == 0; }
};

/// Runs the requested checks. Sweep-based suites search the grid first;
/// random-ball suites draw balls from `seed`.
SuiteResult run_suite(const RadialProfile& profile, const AmbientParams& params, Suite suite,
                      const SuiteOptions& options);

/// Sweep-conditioned checks on an existing maximal profile.
void append_sweep_checks(const RadialProfile& profile, const MaximalProfile& mp,
                         const AmbientParams& params, Suite suite, const QuadratureConfig& qcfg,
                         bool negative_controls, std::vector<IdentityReport>& out);

std::string to_json(const std::vector<IdentityReport>& reports);
std::string to_text(const std::vector<IdentityReport>& reports);

}  // namespace maxvar
