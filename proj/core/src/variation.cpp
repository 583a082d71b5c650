#include "maxvar/variation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "maxvar/error.hpp"

namespace maxvar {

RegionHistogram region_histogram(const MaximalProfile& mp) {
  RegionHistogram h{};
  for (const BestBallResult& r : mp.results) ++h[static_cast<int>(r.region)];
  return h;
}

double lq_norm_derivative(const MaximalProfile& mp, const AmbientParams& params) {
  const std::size_t n = mp.size();
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < mp.results.size(); ++i) {
    if (!mp.results[i].converged) bad.push_back(i);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "unconverged best-ball searches at s =";
    for (std::size_t i : bad) os << ' ' << mp.s[i];
    throw ConvergenceError(os.str());
  }
  if (n < 2) return 0.0;
  const double q = params.q();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dm = std::abs(mp.dm_fd[i]);
    if (i < mp.corner.size() && mp.corner[i]) dm = std::max(dm, std::abs(mp.dm_formula[i]));
    g[i] = std::pow(dm, q) * std::pow(mp.s[i], params.n() - 1);
  }
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) integral += 0.5 * (g[i] + g[i + 1]) * (mp.s[i + 1] - mp.s[i]);
  return std::pow(params.sigma() * integral, 1.0 / q);
}

namespace {

double ratio_on(const RadialProfile& profile, const AmbientParams& params, const GridSpec& grid,
                const SearchConfig& scfg, const QuadratureConfig& qcfg) {
  const MaximalProfile mp = maximal_profile(profile, grid, params, scfg, qcfg);
  return lq_norm_derivative(mp, params) / gradient_l1_norm(profile, params);
}

}  // namespace

VariationReport variation_report(const RadialProfile& profile, const AmbientParams& params,
                                 const GridSpec& grid, const SearchConfig& scfg,
                                 const QuadratureConfig& qcfg, const VariationOptions& options) {
  grid.validate();
  VariationReport rep;
  rep.n = params.n();
  rep.beta = params.beta();
  rep.q = params.q();
  rep.exponent_identity_residual = std::abs(rep.q * rep.beta - rep.n * (rep.q - 1.0));
  rep.grid = grid;
  rep.sweep = maximal_profile(profile, grid, params, scfg, qcfg);
  rep.lq_norm_dm = lq_norm_derivative(rep.sweep, params);
  rep.l1_norm_df = gradient_l1_norm(profile, params);
  rep.ratio = rep.lq_norm_dm / rep.l1_norm_df;
  rep.histogram = region_histogram(rep.sweep);
  for (bool c : rep.sweep.corner) rep.corner_count += c ? 1 : 0;
  rep.tail_bound = std::pow(grid.hi + profile.support_radius(), rep.beta - rep.n) *
                   l1_norm(profile, params) / params.omega();

  if (options.refine) {
    rep.refined_ratio = ratio_on(profile, params, grid.refined(), scfg, qcfg);
    rep.refinement_deviation = std::abs(*rep.refined_ratio - rep.ratio) / rep.ratio;
  }
  if (options.dilate > 0.0) {
    rep.dilation_lambda = options.dilate;
    rep.dilated_ratio = ratio_on(profile.dilated(options.dilate), params,
                                 grid.scaled(1.0 / options.dilate), scfg, qcfg);
    rep.dilation_deviation = std::abs(*rep.dilated_ratio - rep.ratio) / rep.ratio;
  }
  return rep;
}

std::optional<double> FamilyTable::max_ratio(int n, double beta) const {
  std::optional<double> best;
  for (const FamilyRow& row : rows) {
    if (row.n != n || row.beta != beta || !row.report) continue;
    if (!best || row.report->ratio > *best) best = row.report->ratio;
  }
  return best;
}

FamilyTable family_sweep(const FamilySpec& spec, std::uint64_t seed, const SearchConfig& scfg,
                         const QuadratureConfig& qcfg, const VariationOptions& options) {
  FamilyTable table;
  table.seed = seed;
  const std::vector<NamedProfile> profiles = spec.materialize(seed);
  for (const ParamPair& pp : spec.params) {
    const AmbientParams params(pp.n, pp.beta);
    for (const NamedProfile& np : profiles) {
      FamilyRow row;
      row.profile = np.name;
      row.n = pp.n;
      row.beta = pp.beta;
      const GridSpec grid =
          spec.grid ? *spec.grid : GridSpec::standard(np.profile.support_radius(), spec.grid_count);
      try {
        row.report = variation_report(np.profile, params, grid, scfg, qcfg, options);
      } catch (const Error& e) {
        row.error = e.what();
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json report_json(const VariationReport& r) {
  return {{"n", r.n},
          {"beta", r.beta},
          {"q", r.q},
          {"lq_norm_dm", r.lq_norm_dm},
          {"l1_norm_df", r.l1_norm_df},
          {"ratio", r.ratio},
          {"grid", r.grid.to_string()},
          {"refined_ratio", optional_json(r.refined_ratio)},
          {"refinement_deviation", optional_json(r.refinement_deviation)},
          {"dilation_lambda", r.dilation_lambda},
          {"dilated_ratio", optional_json(r.dilated_ratio)},
          {"dilation_deviation", optional_json(r.dilation_deviation)},
          {"region_histogram",
           {{"zero_derivative", r.histogram[0]}, {"E1", r.histogram[1]}, {"E2", r.histogram[2]},
            {"E3", r.histogram[3]}}},
          {"corner_count", r.corner_count},
          {"tail_bound", r.tail_bound},
          {"exponent_identity_residual", r.exponent_identity_residual}};
}

}  // namespace

std::string to_json(const VariationReport& report) { return report_json(report).dump(2); }

std::string to_json(const FamilyTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const FamilyRow& row : table.rows) {
    nlohmann::json j{{"profile", row.profile}, {"n", row.n}, {"beta", row.beta}};
    if (row.report) {
      j["report"] = report_json(*row.report);
    } else {
      j["error"] = row.error;
    }
    rows.push_back(std::move(j));
  }
  return nlohmann::json{{"seed", table.seed}, {"rows", rows}}.dump(2);
}

std::string to_text(const FamilyTable& table) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "# seed %llu\n", static_cast<unsigned long long>(table.seed));
  out += line;
  std::snprintf(line, sizeof line, "%-16s %3s %6s %-22s %-12s %-12s %s\n", "profile", "n", "beta",
                "ratio", "refine_dev", "dilate_dev", "zero/E1/E2/E3");
  out += line;
  for (const FamilyRow& row : table.rows) {
    if (!row.report) {
      std::snprintf(line, sizeof line, "%-16s %3d %6.3g error: %s\n", row.profile.c_str(), row.n,
                    row.beta, row.error.c_str());
    } else {
      const VariationReport& r = *row.report;
      std::snprintf(line, sizeof line, "%-16s %3d %6.3g %-22.17g %-12.3e %-12.3e %d/%d/%d/%d\n",
                    row.profile.c_str(), row.n, row.beta, r.ratio,
                    r.refinement_deviation.value_or(NAN), r.dilation_deviation.value_or(NAN),
                    r.histogram[0], r.histogram[1], r.histogram[2], r.histogram[3]);
    }
    out += line;
  }
  return out;
}

}  // namespace maxvar
