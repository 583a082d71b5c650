#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxvar/best_ball.hpp"
#include "maxvar/families.hpp"

namespace maxvar {

/// Counts of sweep points per region, indexed by Region.
using RegionHistogram = std::array<int, 4>;

RegionHistogram region_histogram(const MaximalProfile& mp);

/// (sigma_n * integral of |m'|^q s^(n-1) ds)^(1/q) by the trapezoid rule on
/// the sweep grid. The finite-difference channel is used, except at corner
/// points where the larger of the two channel magnitudes is taken. Throws
/// ConvergenceError naming unconverged points.
double lq_norm_derivative(const MaximalProfile& mp, const AmbientParams& params);

struct VariationOptions {
  bool refine = true;
  /// Rerun on t -> F(lambda t) over the grid scaled by 1/lambda; 0 disables.
  double dilate = 2.0;
};

struct VariationReport {
  int n = 0;
  double beta = 0.0;
  double q = 0.0;
  double lq_norm_dm = 0.0;
  double l1_norm_df = 0.0;
  double ratio = 0.0;
  GridSpec grid;
  /// |ratio(grid refined) - ratio| / ratio, when computed.
  std::optional<double> refinement_deviation;
  std::optional<double> refined_ratio;
  std::optional<double> dilation_deviation;
  std::optional<double> dilated_ratio;
  double dilation_lambda = 0.0;
  RegionHistogram histogram{};
  int corner_count = 0;
  /// Bound on m beyond the grid: (s_max + T)^(beta - n) ||f||_1 / omega_n.
  double tail_bound = 0.0;
  /// |q beta - n (q - 1)|.
  double exponent_identity_residual = 0.0;
  MaximalProfile sweep;
};

VariationReport variation_report(const RadialProfile& profile, const AmbientParams& params,
                                 const GridSpec& grid, const SearchConfig& scfg,
                                 const QuadratureConfig& qcfg, const VariationOptions& options = {});

struct FamilyRow {
  std::string profile;
  int n = 0;
  double beta = 0.0;
  std::optional<VariationReport> report;
  /// Set when the cell failed.
  std::string error;
};

struct FamilyTable {
  std::uint64_t seed = 0;
  std::vector<FamilyRow> rows;

  /// Largest ratio among successful rows with this (n, beta).
  std::optional<double> max_ratio(int n, double beta) const;
};

FamilyTable family_sweep(const FamilySpec& spec, std::uint64_t seed, const SearchConfig& scfg,
                         const QuadratureConfig& qcfg, const VariationOptions& options = {});

std::string to_json(const VariationReport& report);
std::string to_json(const FamilyTable& table);
std::string to_text(const FamilyTable& table);

}  // namespace maxvar
