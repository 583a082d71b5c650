#include "maxvar/identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "maxvar/error.hpp"
#include "maxvar/families.hpp"
#include "maxvar/parallel.hpp"

namespace maxvar {
namespace {

std::string fmt_ball(const AxisBall& b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "d=%.9g r=%.9g", b.d, b.r);
  return buf;
}

std::string fmt_point(double s, const AxisBall& b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "s=%.9g d=%.9g r=%.9g", s, b.d, b.r);
  return buf;
}

void fill_residuals(IdentityReport& rep) {
  rep.abs_residual = std::abs(rep.lhs - rep.rhs);
  rep.rel_residual =
      rep.abs_residual / std::max({std::abs(rep.lhs), std::abs(rep.rhs), kRelativeFloor});
}

IdentityReport not_applicable(std::string name, std::string inputs) {
  IdentityReport rep;
  rep.name = std::move(name);
  rep.inputs = std::move(inputs);
  rep.status = CheckStatus::not_applicable;
  rep.passed = true;
  return rep;
}

/// lhs <= rhs up to relative slack plus an absolute floor.
IdentityReport inequality_report(std::string name, std::string inputs, double lhs, double rhs,
                                 double zero_tol) {
  IdentityReport rep;
  rep.name = std::move(name);
  rep.inputs = std::move(inputs);
  rep.lhs = lhs;
  rep.rhs = rhs;
  fill_residuals(rep);
  rep.tolerance = kInequalitySlack;
  const double slack = kInequalitySlack * std::max(std::abs(lhs), std::abs(rhs)) + zero_tol;
  rep.passed = lhs <= rhs + slack;
  rep.status = rep.passed ? CheckStatus::passed : CheckStatus::failed;
  return rep;
}

double zero_tol(const RadialProfile& profile) { return kNearZeroScale * profile.max_value(); }

double objective_at(const RadialProfile& profile, const AxisBall& b, const AmbientParams& params,
                    const QuadratureConfig& qcfg) {
  // A center on the negative axis has the same average as its mirror image.
  const AxisBall m{std::abs(b.d), b.r};
  return std::pow(m.r, params.beta()) * ball_average(profile, m, params, qcfg);
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::passed: return "passed";
    case CheckStatus::failed: return "failed";
    case CheckStatus::not_applicable: return "not_applicable";
    case CheckStatus::informational: return "informational";
  }
  return "unknown";
}

IdentityReport equality_report(std::string name, std::string inputs, double lhs, double rhs,
                               double tol, double zero) {
  IdentityReport rep;
  rep.name = std::move(name);
  rep.inputs = std::move(inputs);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.tolerance = tol;
  fill_residuals(rep);
  const bool near_zero = std::max(std::abs(lhs), std::abs(rhs)) <= zero;
  rep.passed = near_zero ? rep.abs_residual <= zero : rep.rel_residual <= tol;
  rep.status = rep.passed ? CheckStatus::passed : CheckStatus::failed;
  return rep;
}

IdentityReport check_divergence(const RadialProfile& profile, const AxisBall& ball,
                                const AmbientParams& params, const QuadratureConfig& qcfg,
                                double tol) {
  const double axial = gradient_axial_component(profile, ball, params, qcfg);
  const double moment = gradient_radial_moment(profile, ball, params, qcfg);
  const double avg = ball_average(profile, ball, params, qcfg);
  const double sph = sphere_average(profile, ball, params, qcfg);
  return equality_report("divergence", fmt_ball(ball), ball.d * axial - moment,
                         params.n() * (avg - sph), tol, zero_tol(profile));
}

IdentityReport check_stationarity(const RadialProfile& profile, const BestBallResult& result,
                                  const AmbientParams& params, const QuadratureConfig& qcfg,
                                  double tol) {
  const AxisBall& b = result.ball;
  const double avg = ball_average(profile, b, params, qcfg);
  const double moment = gradient_radial_moment(profile, b, params, qcfg);
  const double axial = gradient_axial_component(profile, b, params, qcfg);
  IdentityReport rep =
      equality_report("stationarity", fmt_point(result.s, b), avg,
                      -(moment - result.s * axial) / params.beta(), tol, zero_tol(profile));
  if (result.s == 0.0) {
    rep.status = CheckStatus::informational;
    rep.passed = true;
  }
  return rep;
}

IdentityReport check_affine_family(const RadialProfile& profile, double s, const AxisBall& ball,
                                   const AmbientParams& params, const QuadratureConfig& qcfg,
                                   bool at_best_ball, double tol) {
  auto phi = [&](double h) {
    return objective_at(profile, {(1.0 + h) * ball.d - h * s, (1.0 + h) * ball.r}, params, qcfg);
  };
  auto central = [&](double h) { return (phi(h) - phi(-h)) / (2.0 * h); };
  const double d3 = central(1e-3), d4 = central(1e-4), d5 = central(1e-5);
  // Step ratio 10, second-order error: D + (D(h/10) - D(h)) / 99.
  const double r34 = d4 + (d4 - d3) / 99.0;
  const double r45 = d5 + (d5 - d4) / 99.0;

  const double value = objective_at(profile, ball, params, qcfg);
  const double moment = gradient_radial_moment(profile, ball, params, qcfg);
  const double axial = gradient_axial_component(profile, ball, params, qcfg);
  const double analytic =
      std::pow(ball.r, params.beta()) * (moment - s * axial) + params.beta() * value;

  IdentityReport rep;
  rep.name = at_best_ball ? "affine_scaling_best" : "affine_scaling";
  rep.inputs = fmt_point(s, ball);
  rep.lhs = r34;
  rep.rhs = analytic;
  rep.tolerance = tol;
  fill_residuals(rep);
  const double scale = params.beta() * std::abs(value);
  // Noise floor of a difference quotient of quadrature values.
  const double noise = 10.0 * qcfg.rel_tol * std::abs(value) / 1e-5;
  const bool trend = std::abs(r34 - r45) <= std::max(tol * scale, noise);
  bool ok = trend && rep.abs_residual <= tol * scale;
  if (at_best_ball) ok = ok && std::abs(analytic) <= tol * scale && std::abs(r34) <= tol * scale;
  rep.passed = ok;
  rep.status = ok ? CheckStatus::passed : CheckStatus::failed;
  if (!trend) rep.inputs += " (no convergence trend)";
  return rep;
}

IdentityReport check_boundary_formula(const RadialProfile& profile, const BestBallResult& result,
                                      const AmbientParams& params, const QuadratureConfig& qcfg,
                                      double tol) {
  const AxisBall& b = result.ball;
  if (!result.contact.on_boundary()) return not_applicable("boundary_formula", fmt_point(result.s, b));
  const double n = params.n();
  const double axial = gradient_axial_component(profile, b, params, qcfg);
  const double avg = ball_average(profile, b, params, qcfg);
  const double sph = sphere_average(profile, b, params, qcfg);
  const double rhs = (n / b.r) * ((1.0 - params.beta() / n) * avg - sph);
  // Both sides are derivatives; the natural scale for "zero" is value / r.
  const double zero = std::max(zero_tol(profile), 1e-9 * avg / b.r);
  return equality_report("boundary_formula", fmt_point(result.s, b), std::abs(axial), rhs, tol,
                         zero);
}

IdentityReport check_inner_bound(const RadialProfile& profile, const BestBallResult& result,
                                 const AmbientParams& params, const QuadratureConfig& qcfg) {
  const AxisBall& b = result.ball;
  const double s = result.s;
  const double tol = 1e-9 * (s + profile.support_radius());
  if (!result.contact.on_boundary() || s <= 0.0 || b.d + b.r > s + tol) {
    return not_applicable("inner_bound", fmt_point(s, b));
  }
  const double lhs = std::abs(gradient_axial_component(profile, b, params, qcfg));
  const double rhs =
      weighted_gradient_average(profile, b, params, RadialWeight::distance_ratio(s), qcfg);
  return inequality_report("inner_bound", fmt_point(s, b), lhs, rhs, zero_tol(profile));
}

IdentityReport check_key_lemma(const RadialProfile& profile, const BestBallResult& result,
                               const AmbientParams& params, const QuadratureConfig& qcfg) {
  const AxisBall& b = result.ball;
  const double s = result.s;
  if (!result.contact.on_boundary() || s <= 0.0 || b.r > s / 4.0 * (1.0 + 1e-12)) {
    return not_applicable("key_lemma", fmt_point(s, b));
  }
  const double lhs = std::abs(gradient_axial_component(profile, b, params, qcfg));
  const double avg = ball_average(profile, b, params, qcfg);
  const Interval window{std::max(0.0, b.d - 2.0 * b.r), b.d + 2.0 * b.r};
  auto level = level_intervals(profile, 0.5 * avg, 2.0 * avg, window);
  const RadialWeight w = RadialWeight::level_set(std::move(level), 0.5 * avg, 2.0 * avg);
  const double rhs = weighted_gradient_average(profile, {b.d, 2.0 * b.r}, params, w, qcfg);

  IdentityReport rep;
  rep.name = "key_lemma";
  rep.inputs = fmt_point(s, b);
  rep.lhs = lhs;
  rep.rhs = rhs;
  fill_residuals(rep);
  rep.tolerance = 1e-8;
  rep.passed = lhs <= 1e-8 || rhs > 0.0;
  rep.status = rep.passed ? CheckStatus::passed : CheckStatus::failed;
  if (rhs > 0.0) rep.ratio = lhs / rhs;
  return rep;
}

IdentityReport check_ball_comparison(const RadialProfile& profile, const BestBallResult& first,
                                     const BestBallResult& second, const AmbientParams& params,
                                     const QuadratureConfig& qcfg) {
  const AxisBall& b1 = first.ball;
  const AxisBall& b2 = second.ball;
  std::ostringstream inputs;
  inputs << "s1=" << first.s << " s2=" << second.s;
  if (std::abs(b2.d - b1.d) + b2.r > 2.0 * b1.r * (1.0 + 1e-12)) {
    return not_applicable("ball_comparison", inputs.str());
  }
  const double lhs = ball_average(profile, b2, params, qcfg);
  const double rhs = std::pow(2.0, -params.n()) * std::pow(b1.r / b2.r, params.beta()) *
                     ball_average(profile, b1, params, qcfg);
  // lhs >= rhs, phrased as rhs <= lhs.
  IdentityReport rep = inequality_report("ball_comparison", inputs.str(), rhs, lhs, zero_tol(profile));
  std::swap(rep.lhs, rep.rhs);
  return rep;
}

IdentityReport check_annulus_average(const RadialProfile& profile, const AxisBall& ball,
                                     const AmbientParams& params, const QuadratureConfig& qcfg) {
  if (ball.r > ball.d / 2.0) return not_applicable("annulus_average", fmt_ball(ball));
  const double lhs = interval_average(profile, ball.d - ball.r, ball.d + ball.r);
  const double rhs = ball_average(profile, {ball.d, 2.0 * ball.r}, params, qcfg);
  IdentityReport rep;
  rep.name = "annulus_average";
  rep.inputs = fmt_ball(ball);
  rep.lhs = lhs;
  rep.rhs = rhs;
  fill_residuals(rep);
  if (rhs > 0.0) {
    rep.ratio = lhs / rhs;
    rep.passed = std::isfinite(*rep.ratio);
    rep.status = rep.passed ? CheckStatus::informational : CheckStatus::failed;
  } else {
    // f vanishes on B(d, 2r), hence also on the shell [d - r, d + r].
    rep.passed = lhs == 0.0;
    rep.status = rep.passed ? CheckStatus::not_applicable : CheckStatus::failed;
  }
  return rep;
}

AxisBall perturbed_contact_ball(const BestBallResult& result) {
  const double s = result.s;
  const AxisBall& b = result.ball;
  if (result.contact.kind == ContactKind::boundary_outer) {
    const double r = 1.05 * b.r;
    return {s + r, r};
  }
  if (result.contact.kind == ContactKind::boundary_inner) {
    const double r = 1.05 * b.r <= s ? 1.05 * b.r : 0.95 * b.r;
    return {s - r, r};
  }
  return {b.d, 1.05 * b.r};
}

IdentityReport negative_control(IdentityReport underlying) {
  underlying.name += "_control";
  if (underlying.status == CheckStatus::passed || underlying.status == CheckStatus::failed) {
    underlying.passed = underlying.status == CheckStatus::failed;
    underlying.status = underlying.passed ? CheckStatus::passed : CheckStatus::failed;
  }
  return underlying;
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::all: return "all";
    case Suite::divergence: return "divergence";
    case Suite::stationarity: return "stationarity";
    case Suite::boundary: return "boundary";
    case Suite::inner: return "inner";
    case Suite::keylemma: return "keylemma";
    case Suite::comparison: return "comparison";
    case Suite::annulus: return "annulus";
  }
  return "unknown";
}

Suite parse_suite(std::string_view text) {
  for (Suite s : {Suite::all, Suite::divergence, Suite::stationarity, Suite::boundary, Suite::inner,
                  Suite::keylemma, Suite::comparison, Suite::annulus}) {
    if (to_string(s) == text) return s;
  }
  throw ParameterError("unknown suite: " + std::string(text));
}

int SuiteResult::count(CheckStatus status) const {
  return static_cast<int>(std::count_if(reports.begin(), reports.end(),
                                        [&](const IdentityReport& r) { return r.status == status; }));
}

void append_sweep_checks(const RadialProfile& profile, const MaximalProfile& mp,
                         const AmbientParams& params, Suite suite, const QuadratureConfig& qcfg,
                         bool negative_controls, std::vector<IdentityReport>& out) {
  auto wants = [&](Suite s) { return suite == Suite::all || suite == s; };
  const std::size_t n = mp.size();
  std::vector<std::vector<IdentityReport>> per_point(n);
  parallel_for(n, [&](std::size_t i) {
    const BestBallResult& res = mp.results[i];
    auto& reps = per_point[i];
    if (!res.converged) {
      IdentityReport skip = not_applicable("unconverged", fmt_point(res.s, res.ball));
      reps.push_back(skip);
      return;
    }
    BestBallResult perturbed = res;
    perturbed.ball = perturbed_contact_ball(res);
    const bool control = negative_controls && res.contact.on_boundary() && res.s > 0.0;
    if (wants(Suite::stationarity)) {
      reps.push_back(check_stationarity(profile, res, params, qcfg));
      reps.push_back(check_affine_family(profile, res.s, res.ball, params, qcfg, true));
      if (control) {
        reps.push_back(negative_control(check_stationarity(profile, perturbed, params, qcfg)));
      }
    }
    if (wants(Suite::boundary)) {
      reps.push_back(check_boundary_formula(profile, res, params, qcfg));
      if (control) {
        reps.push_back(negative_control(check_boundary_formula(profile, perturbed, params, qcfg)));
      }
    }
    if (wants(Suite::inner)) reps.push_back(check_inner_bound(profile, res, params, qcfg));
    if (wants(Suite::keylemma)) reps.push_back(check_key_lemma(profile, res, params, qcfg));
    if (wants(Suite::comparison)) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || !mp.results[j].converged) continue;
        IdentityReport rep = check_ball_comparison(profile, res, mp.results[j], params, qcfg);
        if (rep.status != CheckStatus::not_applicable) reps.push_back(std::move(rep));
      }
    }
  });
  for (auto& reps : per_point) {
    for (auto& r : reps) out.push_back(std::move(r));
  }
}

SuiteResult run_suite(const RadialProfile& profile, const AmbientParams& params, Suite suite,
                      const SuiteOptions& options) {
  SuiteResult result;
  auto wants = [&](Suite s) { return suite == Suite::all || suite == s; };
  const double support = profile.support_radius();
  const QuadratureConfig& qcfg = options.quadrature;

  if (wants(Suite::divergence)) {
    std::mt19937_64 rng(options.seed);
    std::vector<AxisBall> balls(options.random_balls);
    for (AxisBall& b : balls) b = random_ball(rng, support);
    std::vector<IdentityReport> reps(balls.size());
    parallel_for(balls.size(), [&](std::size_t i) {
      reps[i] = check_divergence(profile, balls[i], params, qcfg);
    });
    for (auto& r : reps) result.reports.push_back(std::move(r));
  }
  if (wants(Suite::annulus)) {
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<AxisBall> balls(options.random_balls);
    for (AxisBall& b : balls) b = random_annulus_ball(rng, support);
    std::vector<IdentityReport> reps(balls.size());
    parallel_for(balls.size(), [&](std::size_t i) {
      reps[i] = check_annulus_average(profile, balls[i], params, qcfg);
    });
    for (auto& r : reps) result.reports.push_back(std::move(r));
  }
  const bool sweep = wants(Suite::stationarity) || wants(Suite::boundary) || wants(Suite::inner) ||
                     wants(Suite::keylemma) || wants(Suite::comparison);
  if (sweep) {
    const GridSpec grid = options.grid.count > 0 ? options.grid : GridSpec::standard(support, 32);
    const MaximalProfile mp = maximal_profile(profile, grid, params, options.search, qcfg);
    append_sweep_checks(profile, mp, params, suite, qcfg, options.negative_controls, result.reports);
  }
  return result;
}

std::string to_json(const std::vector<IdentityReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const IdentityReport& r : reports) {
    nlohmann::json j{{"name", r.name},
                     {"inputs", r.inputs},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"abs_residual", r.abs_residual},
                     {"rel_residual", r.rel_residual},
                     {"tolerance", r.tolerance},
                     {"passed", r.passed},
                     {"status", std::string(to_string(r.status))}};
    j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::string to_text(const std::vector<IdentityReport>& reports) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-24s %-15s %-24s %-24s %-12s %-10s %s\n", "name", "status",
                "lhs", "rhs", "rel_resid", "ratio", "inputs");
  out += line;
  for (const IdentityReport& r : reports) {
    char ratio[32] = "-";
    if (r.ratio) std::snprintf(ratio, sizeof ratio, "%.4g", *r.ratio);
    std::snprintf(line, sizeof line, "%-24s %-15s %-24.17g %-24.17g %-12.3e %-10s %s\n",
                  r.name.c_str(), std::string(to_string(r.status)).c_str(), r.lhs, r.rhs,
                  r.rel_residual, ratio, r.inputs.c_str());
    out += line;
  }
  return out;
}

}  // namespace maxvar
