#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maxvar/ball_geometry.hpp"
#include "maxvar/grid.hpp"
#include "maxvar/radial_core.hpp"

namespace maxvar {

struct NamedProfile {
  std::string name;
  RadialProfile profile;
};

/// Uniform double in [0, 1) from the top 53 bits; unlike the standard
/// distributions this mapping is identical across library implementations.
double unit_uniform(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double a, double b);

/// tent, annular bump and two-bump.
std::vector<NamedProfile> standard_family();

/// Continuous piecewise-linear profile with `knots` knots (>= 3) on [0, T]
/// with T in [2, 4]; some interior values are forced to 0 to produce gaps.
RadialProfile random_profile(std::mt19937_64& rng, int knots);

/// Ball with d in [0, 1.5 T] and r log-uniform in [0.05 T, 2 T].
AxisBall random_ball(std::mt19937_64& rng, double support);

/// Ball with d in [0.2 T, 1.5 T] and r in [0.02 d, 0.5 d].
AxisBall random_annulus_ball(std::mt19937_64& rng, double support);

struct ParamPair {
  int n;
  double beta;
};

/// Family description read from JSON:
///   {"profiles": [{"name": "...", "knots": [[t, F], ...]}, ...],
///    "random": {"count": 10, "knots": 6},
///    "params": [[2, 0.5], ...],
///    "grid": "lo:hi:count:log", "grid_count": 64}
/// Without "grid" each profile gets GridSpec::standard(T, grid_count).
struct FamilySpec {
  std::vector<NamedProfile> profiles;
  int random_count = 0;
  int random_knots = 6;
  std::vector<ParamPair> params;
  std::optional<GridSpec> grid;
  int grid_count = 64;

  /// Explicit profiles followed by `random_count` seeded random ones.
  std::vector<NamedProfile> materialize(std::uint64_t seed) const;

  static FamilySpec parse_json(const std::string& text);
  static FamilySpec standard();
};

}  // namespace maxvar
