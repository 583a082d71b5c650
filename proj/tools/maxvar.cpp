// maxvar: command-line front end for the fractional maximal function lab.
//
// Exit status: 0 success, 1 a requested check failed, 2 usage or input
// error, 3 numerical non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "maxvar/averages.hpp"
#include "maxvar/best_ball.hpp"
#include "maxvar/error.hpp"
#include "maxvar/families.hpp"
#include "maxvar/identities.hpp"
#include "maxvar/oracles.hpp"
#include "maxvar/parallel.hpp"
#include "maxvar/profile_io.hpp"
#include "maxvar/variation.hpp"

namespace {

using namespace maxvar;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergence = 3;

struct Common {
  int n = 0;
  double beta = 0.0;
  std::string profile;
  std::string out = "-";
  std::string format;
  int multistarts = SearchConfig{}.multistarts;
  double rel_tol = QuadratureConfig::identity().rel_tol;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw ParameterError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

SearchConfig search_config(const Common& c) {
  SearchConfig s;
  s.multistarts = c.multistarts;
  return s;
}

QuadratureConfig quadrature_config(const Common& c) {
  QuadratureConfig q = QuadratureConfig::identity();
  q.rel_tol = c.rel_tol;
  return q;
}

std::string header(const Common& c, const SearchConfig& s, const QuadratureConfig& q) {
  std::ostringstream os;
  const std::string name = std::filesystem::path(c.profile).filename().string();
  os << "# n=" << c.n << " beta=" << g17(c.beta) << " profile=" << name << "\n"
     << "# search: r_per_decade=" << s.r_points_per_decade << " d_per_row=" << s.d_points_per_row
     << " multistarts=" << s.multistarts << " local_tol=" << s.local_tol
     << " tie_tol=" << s.tie_tol << " r_min_fraction=" << s.r_min_fraction
     << " contact_tol=" << s.contact_tol << "\n"
     << "# quadrature: rel_tol=" << q.rel_tol << " max_subdivisions=" << q.max_subdivisions
     << "\n";
  return os.str();
}

void add_common(CLI::App* app, Common& c, bool need_profile = true) {
  app->add_option("--n", c.n, "dimension")->required();
  app->add_option("--beta", c.beta, "fractional order, 0 < beta < n")->required();
  auto* p = app->add_option("--profile", c.profile, "profile file (.json or two-column CSV)");
  if (need_profile) p->required();
  app->add_option("--multistarts", c.multistarts, "local refinements per search")
      ->capture_default_str();
  app->add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance")->capture_default_str();
}

int count_unconverged(const std::vector<BestBallResult>& results) {
  int bad = 0;
  for (const BestBallResult& r : results) bad += r.converged ? 0 : 1;
  return bad;
}

// ---- eval ----

int run_eval(const Common& c, const std::vector<double>& points) {
  const AmbientParams params(c.n, c.beta);
  const RadialProfile profile = read_profile(c.profile);
  const SearchConfig scfg = search_config(c);
  const QuadratureConfig qcfg = quadrature_config(c);
  for (double s : points) {
    if (!(s >= 0.0)) throw ParameterError("evaluation radii must be >= 0");
  }
  std::vector<BestBallResult> results(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    results[i] = search(profile, points[i], params, scfg, qcfg);
  });
  Output out(c.out);
  auto& os = out.stream();
  if (c.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const BestBallResult& r : results) {
      arr.push_back({{"s", r.s}, {"value", r.value}, {"d", r.ball.d}, {"r", r.ball.r},
                     {"contact", to_string(r.contact.kind)}, {"c", r.contact.c},
                     {"region", to_string(r.region)}, {"converged", r.converged},
                     {"tie_ambiguous", r.tie_ambiguous}});
    }
    os << arr.dump(2) << "\n";
  } else {
    os << header(c, scfg, qcfg);
    os << "s,value,d,r,contact,c,region,converged\n";
    for (const BestBallResult& r : results) {
      os << g17(r.s) << ',' << g17(r.value) << ',' << g17(r.ball.d) << ',' << g17(r.ball.r) << ','
         << to_string(r.contact.kind) << ',' << g17(r.contact.c) << ',' << to_string(r.region)
         << ',' << (r.converged ? 1 : 0) << "\n";
    }
  }
  return count_unconverged(results) > 0 ? kExitNonConvergence : kExitOk;
}

// ---- sweep ----

GridSpec grid_or_standard(const std::string& text, const RadialProfile& profile) {
  return text.empty() ? GridSpec::standard(profile.support_radius()) : GridSpec::parse(text);
}

void write_sweep_csv(std::ostream& os, const MaximalProfile& mp) {
  os << "s,value,d,r,contact,c,region,dmdr_fd,dmdr_formula,corner_flag\n";
  for (std::size_t i = 0; i < mp.size(); ++i) {
    const BestBallResult& r = mp.results[i];
    os << g17(mp.s[i]) << ',' << g17(mp.m[i]) << ',' << g17(r.ball.d) << ',' << g17(r.ball.r)
       << ',' << to_string(r.contact.kind) << ',' << g17(r.contact.c) << ','
       << to_string(r.region) << ',' << g17(mp.dm_fd[i]) << ',' << g17(mp.dm_formula[i]) << ','
       << (mp.corner[i] ? 1 : 0) << "\n";
  }
}

nlohmann::json sweep_json(const MaximalProfile& mp) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < mp.size(); ++i) {
    const BestBallResult& r = mp.results[i];
    arr.push_back({{"s", mp.s[i]}, {"value", mp.m[i]}, {"d", r.ball.d}, {"r", r.ball.r},
                   {"contact", to_string(r.contact.kind)}, {"c", r.contact.c},
                   {"region", to_string(r.region)}, {"dmdr_fd", mp.dm_fd[i]},
                   {"dmdr_formula", mp.dm_formula[i]}, {"corner_flag", mp.corner[i]},
                   {"converged", r.converged}});
  }
  return arr;
}

int run_sweep(const Common& c, const std::string& grid_text, const std::string& plot_path) {
  const AmbientParams params(c.n, c.beta);
  const RadialProfile profile = read_profile(c.profile);
  const GridSpec grid = grid_or_standard(grid_text, profile);
  grid.validate();
  const SearchConfig scfg = search_config(c);
  const QuadratureConfig qcfg = quadrature_config(c);
  const MaximalProfile mp = maximal_profile(profile, grid, params, scfg, qcfg);
  {
    Output out(c.out);
    auto& os = out.stream();
    if (c.format == "json") {
      nlohmann::json doc{{"n", c.n}, {"beta", c.beta}, {"grid", grid.to_string()},
                         {"points", sweep_json(mp)}};
      os << doc.dump(2) << "\n";
    } else {
      os << header(c, scfg, qcfg) << "# grid=" << grid.to_string() << "\n";
      write_sweep_csv(os, mp);
    }
  }
  if (!plot_path.empty()) {
    Output plot(plot_path);
    auto& os = plot.stream();
    os << "# s m dm region\n";
    for (std::size_t i = 0; i < mp.size(); ++i) {
      os << g17(mp.s[i]) << ' ' << g17(mp.m[i]) << ' ' << g17(mp.dm_fd[i]) << ' '
         << to_string(mp.results[i].region) << "\n";
    }
  }
  return count_unconverged(mp.results) > 0 ? kExitNonConvergence : kExitOk;
}

// ---- verify ----

int run_verify(const Common& c, const std::string& suite_name, std::uint64_t seed, int balls,
               const std::string& grid_text, bool controls) {
  const AmbientParams params(c.n, c.beta);
  const RadialProfile profile = read_profile(c.profile);
  SuiteOptions opt;
  opt.seed = seed;
  opt.random_balls = balls;
  opt.search = search_config(c);
  opt.quadrature = quadrature_config(c);
  opt.negative_controls = controls;
  if (!grid_text.empty()) opt.grid = GridSpec::parse(grid_text);
  const Suite suite = parse_suite(suite_name);
  const SuiteResult res = run_suite(profile, params, suite, opt);

  Output out(c.out);
  auto& os = out.stream();
  if (c.format == "json") {
    os << to_json(res.reports) << "\n";
  } else {
    os << header(c, opt.search, opt.quadrature);
    os << "# suite=" << suite_name << " seed=" << seed << " random_balls=" << balls << "\n";
    os << to_text(res.reports);
    os << "# passed=" << res.count(CheckStatus::passed)
       << " failed=" << res.count(CheckStatus::failed)
       << " not_applicable=" << res.count(CheckStatus::not_applicable)
       << " informational=" << res.count(CheckStatus::informational) << "\n";
  }
  return res.all_passed() ? kExitOk : kExitCheckFailed;
}

// ---- ratio ----

int run_ratio(const Common& c, const std::string& grid_text, bool refine, double dilate) {
  const AmbientParams params(c.n, c.beta);
  const RadialProfile profile = read_profile(c.profile);
  const GridSpec grid = grid_or_standard(grid_text, profile);
  VariationOptions opt;
  opt.refine = refine;
  opt.dilate = dilate;
  const SearchConfig scfg = search_config(c);
  const QuadratureConfig qcfg = quadrature_config(c);
  const VariationReport rep = variation_report(profile, params, grid, scfg, qcfg, opt);
  Output out(c.out);
  auto& os = out.stream();
  if (c.format == "json") {
    os << to_json(rep) << "\n";
  } else {
    os << header(c, scfg, qcfg) << "# grid=" << grid.to_string() << "\n";
    os << "q " << g17(rep.q) << "\n"
       << "lq_norm_dm " << g17(rep.lq_norm_dm) << "\n"
       << "l1_norm_df " << g17(rep.l1_norm_df) << "\n"
       << "ratio " << g17(rep.ratio) << "\n";
    if (rep.refinement_deviation) {
      os << "refined_ratio " << g17(*rep.refined_ratio) << "\n"
         << "refinement_deviation " << g17(*rep.refinement_deviation) << "\n";
    }
    if (rep.dilation_deviation) {
      os << "dilation_lambda " << g17(rep.dilation_lambda) << "\n"
         << "dilated_ratio " << g17(*rep.dilated_ratio) << "\n"
         << "dilation_deviation " << g17(*rep.dilation_deviation) << "\n";
    }
    os << "regions zero_derivative=" << rep.histogram[0] << " E1=" << rep.histogram[1]
       << " E2=" << rep.histogram[2] << " E3=" << rep.histogram[3] << "\n"
       << "corner_count " << rep.corner_count << "\n"
       << "tail_bound " << g17(rep.tail_bound) << "\n"
       << "exponent_identity_residual " << g17(rep.exponent_identity_residual) << "\n";
  }
  return kExitOk;
}

// ---- oracle ----

struct OracleArgs {
  std::string mode;
  double x = 0.0;
  double d = 0.0;
  double r = 1.0;
  long samples = 1000000;
  std::uint64_t seed = 1;
  int resolution = 2000;
};

int run_oracle(const Common& c, const OracleArgs& a) {
  const RadialProfile profile = read_profile(c.profile);
  const QuadratureConfig qcfg = quadrature_config(c);
  Output out(c.out);
  auto& os = out.stream();
  bool ok = true;
  if (a.mode == "1d") {
    if (c.n != 1) throw ParameterError("--mode 1d needs --n 1");
    const AmbientParams params(1, c.beta);
    const Oracle1dResult o = oracle_1d_maximal(profile, a.x, c.beta, a.resolution);
    const BestBallResult s = search(profile, std::abs(a.x), params, search_config(c), qcfg);
    const double rel = std::abs(s.value - o.value) / o.value;
    ok = rel <= 1e-3;
    os << "oracle " << g17(o.value) << " interval [" << g17(o.a) << ", " << g17(o.b) << "]\n"
       << "search " << g17(s.value) << " ball d=" << g17(s.ball.d) << " r=" << g17(s.ball.r) << "\n"
       << "relative_error " << g17(rel) << " tolerance 1e-3 " << (ok ? "pass" : "FAIL") << "\n";
  } else if (a.mode == "mc") {
    const AmbientParams params(c.n, c.beta);
    const AxisBall ball{a.d, a.r};
    const MonteCarloEstimate mc = oracle_mc_ball_average(profile, ball, params, a.samples, a.seed);
    const double fast = ball_average(profile, ball, params, qcfg);
    const double z = mc.standard_error > 0 ? std::abs(fast - mc.mean) / mc.standard_error
                                           : (fast == mc.mean ? 0.0 : INFINITY);
    ok = z <= 3.0;
    os << "# seed=" << a.seed << " samples=" << a.samples << "\n"
       << "monte_carlo " << g17(mc.mean) << " stderr " << g17(mc.standard_error) << "\n"
       << "ball_average " << g17(fast) << "\n"
       << "z " << g17(z) << " tolerance 3 " << (ok ? "pass" : "FAIL") << "\n";
  } else if (a.mode == "dense2d") {
    if (c.n != 2) throw ParameterError("--mode dense2d needs --n 2");
    const AmbientParams params(2, c.beta);
    const AxisBall ball{a.d, a.r};
    const double dense = oracle_dense_average_2d(profile, ball, a.resolution);
    const double fast = ball_average(profile, ball, params, qcfg);
    const double rel = std::abs(fast - dense) / std::max(std::abs(dense), 1e-300);
    ok = rel <= 1e-6;
    os << "# resolution=" << a.resolution << "\n"
       << "dense " << g17(dense) << "\n"
       << "ball_average " << g17(fast) << "\n"
       << "relative_error " << g17(rel) << " tolerance 1e-6 " << (ok ? "pass" : "FAIL") << "\n";
  } else {
    throw ParameterError("unknown oracle mode: " + a.mode);
  }
  return ok ? kExitOk : kExitCheckFailed;
}

// ---- family ----

int run_family(const std::string& spec_path, std::uint64_t seed, const std::string& out_path,
               const std::string& format, bool refine, double dilate, int multistarts) {
  FamilySpec spec = FamilySpec::standard();
  if (!spec_path.empty()) {
    std::ifstream f(spec_path, std::ios::binary);
    if (!f) throw ParameterError("cannot open family spec: " + spec_path);
    std::ostringstream buf;
    buf << f.rdbuf();
    spec = FamilySpec::parse_json(buf.str());
  }
  SearchConfig scfg;
  scfg.multistarts = multistarts;
  VariationOptions opt;
  opt.refine = refine;
  opt.dilate = dilate;
  const FamilyTable table = family_sweep(spec, seed, scfg, QuadratureConfig::identity(), opt);
  Output out(out_path);
  auto& os = out.stream();
  if (format == "json") {
    os << to_json(table) << "\n";
  } else {
    os << to_text(table);
    for (const ParamPair& p : spec.params) {
      if (auto m = table.max_ratio(p.n, p.beta)) {
        os << "# max_ratio n=" << p.n << " beta=" << g17(p.beta) << " " << g17(*m) << "\n";
      }
    }
  }
  for (const FamilyRow& row : table.rows) {
    if (!row.report) return kExitNonConvergence;
  }
  return kExitOk;
}

/// Expands --config FILE into flags placed before the command line ones, so
/// explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed config file: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterError("config file must hold a JSON object");
  std::vector<std::string> injected;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ',';
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      injected.push_back(flag);
      injected.push_back(joined);
    } else {
      injected.push_back(flag);
      injected.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  // Subcommand name first, then config values, then explicit flags.
  std::vector<std::string> out;
  std::size_t i = 0;
  if (!rest.empty() && rest[0].rfind("-", 0) != 0) out.push_back(rest[i++]);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(i), rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxvar: fractional maximal function of radial profiles"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all", "help for every subcommand");
  std::string config_unused;
  app.add_option("--config", config_unused, "JSON object of flag values; explicit flags win");

  Common common;
  std::vector<double> points;
  auto* eval = app.add_subcommand("eval", "best ball and maximal value at given radii");
  add_common(eval, common);
  eval->add_option("--s", points, "evaluation radii")->delimiter(',')->required();
  eval->add_option("--out", common.out, "output path, - for stdout");
  eval->add_option("--format", common.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  std::string grid_text, plot_path;
  auto* sweep = app.add_subcommand("sweep", "maximal profile, derivatives and regions on a grid");
  add_common(sweep, common);
  sweep->add_option("--grid", grid_text, "lo:hi:count:log|lin (default: standard grid)");
  sweep->add_option("--out", common.out, "output path, - for stdout");
  sweep->add_option("--format", common.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--plot", plot_path, "also write plot data (s, m, dm, region)");

  std::string suite_name = "all";
  std::uint64_t seed = 1;
  int balls = 100;
  bool no_controls = false;
  auto* verify = app.add_subcommand("verify", "identity and inequality suites");
  add_common(verify, common);
  verify->add_option("--suite", suite_name)
      ->check(CLI::IsMember({"all", "divergence", "stationarity", "boundary", "inner", "keylemma",
                             "comparison", "annulus"}))
      ->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--balls", balls, "random balls per random-ball suite")->capture_default_str();
  verify->add_option("--grid", grid_text, "sweep grid for best-ball suites");
  verify->add_flag("--no-controls", no_controls, "skip negative controls");
  verify->add_option("--out", common.out, "output path, - for stdout");
  verify->add_option("--format", common.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  bool refine = false;
  double dilate = 0.0;
  auto* ratio = app.add_subcommand("ratio", "variation ratio of the maximal function");
  add_common(ratio, common);
  ratio->add_option("--grid", grid_text, "lo:hi:count:log|lin (default: standard grid)");
  ratio->add_flag("--refine", refine, "also run on the doubled grid");
  ratio->add_option("--dilate", dilate, "also run on t -> F(L t)");
  ratio->add_option("--out", common.out, "output path, - for stdout");
  ratio->add_option("--format", common.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "cross-check fast kernels against slow oracles");
  add_common(oracle, common);
  oracle->add_option("--mode", oa.mode)->check(CLI::IsMember({"1d", "mc", "dense2d"}))->required();
  oracle->add_option("--x", oa.x, "evaluation point (1d)");
  oracle->add_option("--d", oa.d, "ball centre distance (mc, dense2d)");
  oracle->add_option("--r", oa.r, "ball radius (mc, dense2d)");
  oracle->add_option("--samples", oa.samples)->capture_default_str();
  oracle->add_option("--seed", oa.seed)->capture_default_str();
  oracle->add_option("--resolution", oa.resolution)->capture_default_str();
  oracle->add_option("--out", common.out, "output path, - for stdout");

  std::string spec_path;
  bool family_no_refine = false;
  double family_dilate = 2.0;
  auto* family = app.add_subcommand("family", "variation ratios over a profile family");
  family->add_option("--spec", spec_path, "family JSON (default: standard family, n=2)");
  family->add_option("--seed", seed)->capture_default_str();
  family->add_option("--out", common.out, "output path, - for stdout");
  family->add_option("--format", common.format, "text|json")->check(CLI::IsMember({"text", "json"}));
  family->add_flag("--no-refine", family_no_refine);
  family->add_option("--dilate", family_dilate, "dilation factor, 0 disables")->capture_default_str();
  family->add_option("--multistarts", common.multistarts)->capture_default_str();

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "maxvar: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(common, points);
    if (*sweep) return run_sweep(common, grid_text, plot_path);
    if (*verify) return run_verify(common, suite_name, seed, balls, grid_text, !no_controls);
    if (*ratio) return run_ratio(common, grid_text, refine, dilate);
    if (*oracle) return run_oracle(common, oa);
    if (*family) {
      return run_family(spec_path, seed, common.out, common.format, !family_no_refine,
                        family_dilate, common.multistarts);
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "maxvar: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const QuadratureError& e) {
    std::cerr << "maxvar: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const Error& e) {
    std::cerr << "maxvar: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
