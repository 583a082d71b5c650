#include "maxvar/best_ball.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "maxvar/averages.hpp"
#include "maxvar/error.hpp"
#include "maxvar/parallel.hpp"

namespace maxvar {
namespace {

/// Search rectangle in (u, v) = (log r, relative position of d in its row).
/// Row r admits d in [max(0, s - r), s + r]; v = 1 is the outer contact
/// family d = s + r, and v = 0 is the inner one d = s - r while r < s.
struct Domain {
  double s;
  double support;
  double r_min;
  double r_max;
  double u_min;
  double u_max;

  Domain(double s_, double support_, double r_min_fraction)
      : s(s_), support(support_), r_min(r_min_fraction * support_), r_max(s_ + support_),
        u_min(std::log(r_min)), u_max(std::log(r_max)) {}

  double radius(double u) const {
    if (u >= u_max) return r_max;
    if (u <= u_min) return r_min;
    return std::exp(u);
  }

  AxisBall ball(double u, double v) const {
    const double r = radius(u);
    const double lo = std::max(0.0, s - r);
    const double hi = s + r;
    double d;
    if (v <= 0.0) {
      d = lo;
    } else if (v >= 1.0) {
      d = hi;
    } else {
      d = lo + v * (hi - lo);
    }
    return {d, r};
  }

  /// (u, v) of a ball, clamped into the rectangle.
  std::pair<double, double> coords(const AxisBall& b) const {
    const double u = std::clamp(std::log(std::max(b.r, r_min)), u_min, u_max);
    const double r = radius(u);
    const double lo = std::max(0.0, s - r);
    const double hi = s + r;
    const double v = hi > lo ? std::clamp((b.d - lo) / (hi - lo), 0.0, 1.0) : 0.0;
    return {u, v};
  }

  double scale() const { return s + support; }
};

class Evaluator {
 public:
  Evaluator(const RadialProfile& p, const AmbientParams& params, const Domain& dom)
      : profile_(p), params_(params), dom_(dom) {}

  double operator()(double u, double v, const QuadratureConfig& cfg) {
    return value(dom_.ball(u, v), cfg);
  }

  double value(const AxisBall& b, const QuadratureConfig& cfg) {
    ++evals_;
    return std::pow(b.r, params_.beta()) * ball_average(profile_, b, params_, cfg);
  }

  long evals() const { return evals_; }

 private:
  const RadialProfile& profile_;
  const AmbientParams& params_;
  const Domain& dom_;
  long evals_ = 0;
};

struct Candidate {
  double u;
  double v;
  double value;
  bool converged;
};

struct Vertex {
  double u;
  double v;
  double f;  // negated objective
};

/// Bound-constrained Nelder-Mead maximizing the objective in (u, v), with
/// restarts so a simplex that collapsed onto an edge can leave it again.
Candidate nelder_mead(Evaluator& eval, const Domain& dom, double u0, double v0, double du,
                      double dv, const SearchConfig& scfg, const QuadratureConfig& cfg) {
  auto clamp_u = [&](double u) { return std::clamp(u, dom.u_min, dom.u_max); };
  auto clamp_v = [](double v) { return std::clamp(v, 0.0, 1.0); };
  auto make = [&](double u, double v) {
    u = clamp_u(u);
    v = clamp_v(v);
    return Vertex{u, v, -eval(u, v, cfg)};
  };

  Vertex best = make(u0, v0);
  bool converged = false;
  int iterations = 0;
  const int restarts = 3;
  for (int round = 0; round < restarts && iterations < scfg.max_local_iterations; ++round) {
    const double su = (best.u + du > dom.u_max) ? -du : du;
    const double sv = (best.v + dv > 1.0) ? -dv : dv;
    std::array<Vertex, 3> x{best, make(best.u + su, best.v), make(best.u, best.v + sv)};
    bool round_converged = false;
    while (iterations < scfg.max_local_iterations) {
      ++iterations;
      std::sort(x.begin(), x.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      double diam = 0.0;
      for (int i = 1; i < 3; ++i) {
        diam = std::max({diam, std::abs(x[i].u - x[0].u), std::abs(x[i].v - x[0].v)});
      }
      if (diam < scfg.local_tol) {
        round_converged = true;
        break;
      }
      const double cu = 0.5 * (x[0].u + x[1].u);
      const double cv = 0.5 * (x[0].v + x[1].v);
      const Vertex r = make(cu + (cu - x[2].u), cv + (cv - x[2].v));
      if (r.f < x[0].f) {
        const Vertex e = make(cu + 2.0 * (cu - x[2].u), cv + 2.0 * (cv - x[2].v));
        x[2] = e.f < r.f ? e : r;
      } else if (r.f < x[1].f) {
        x[2] = r;
      } else {
        const bool outside = r.f < x[2].f;
        const Vertex c = outside ? make(cu + 0.5 * (r.u - cu), cv + 0.5 * (r.v - cv))
                                 : make(cu + 0.5 * (x[2].u - cu), cv + 0.5 * (x[2].v - cv));
        if (c.f < (outside ? r.f : x[2].f)) {
          x[2] = c;
        } else {
          for (int i = 1; i < 3; ++i) {
            x[i] = make(x[0].u + 0.5 * (x[i].u - x[0].u), x[0].v + 0.5 * (x[i].v - x[0].v));
          }
        }
      }
    }
    std::sort(x.begin(), x.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const double moved = std::max(std::abs(x[0].u - best.u), std::abs(x[0].v - best.v));
    const bool improved = x[0].f < best.f;
    if (improved) best = x[0];
    converged = round_converged;
    // A restart that neither moved nor improved confirms the optimum.
    if (round > 0 && round_converged && moved < 10.0 * scfg.local_tol) break;
    du *= 0.1;
    dv *= 0.1;
  }
  return {best.u, best.v, -best.f, converged};
}

/// One-dimensional maximization along an edge (v fixed) over u in [ua, ub].
Candidate edge_search(Evaluator& eval, double v, double ua, double ub, const QuadratureConfig& cfg) {
  if (!(ub > ua)) return {ua, v, eval(ua, v, cfg), true};
  const int bits = std::numeric_limits<double>::digits / 2;
  std::uintmax_t max_iter = 200;
  auto f = [&](double u) { return -eval(u, v, cfg); };
  const auto [u, fu] = boost::math::tools::brent_find_minima(f, ua, ub, bits, max_iter);
  Candidate c{u, v, -fu, max_iter < 200};
  // Brent never probes the bracket ends; the maximum may sit on one.
  for (double end : {ua, ub}) {
    const double fe = eval(end, v, cfg);
    if (fe > c.value) c = {end, v, fe, true};
  }
  return c;
}

/// Snap a near-contact local optimum onto the contact family it approaches.
Candidate snap_to_contact(Evaluator& eval, const Domain& dom, Candidate c, double tie_tol,
                          const QuadratureConfig& cfg) {
  constexpr double snap = 1e-6;
  double target = -1.0;
  if (c.v >= 1.0 - snap && c.v < 1.0) target = 1.0;
  if (c.v <= snap && c.v > 0.0 && dom.radius(c.u) < dom.s) target = 0.0;
  if (target < 0.0) return c;
  const double val = eval(c.u, target, cfg);
  if (val >= c.value - tie_tol * std::abs(c.value)) {
    c.v = target;
    c.value = val;
  }
  return c;
}

struct Selection {
  Candidate best;
  bool ambiguous;
};

Selection select(const std::vector<Candidate>& cands, const Domain& dom, double tie_tol) {
  double top = -std::numeric_limits<double>::infinity();
  for (const Candidate& c : cands) top = std::max(top, c.value);
  const double cutoff = top - tie_tol * std::abs(top);
  const Candidate* chosen = nullptr;
  AxisBall chosen_ball{};
  for (const Candidate& c : cands) {
    if (c.value < cutoff) continue;
    const AxisBall b = dom.ball(c.u, c.v);
    if (chosen == nullptr || b.r < chosen_ball.r ||
        (b.r == chosen_ball.r && b.d < chosen_ball.d)) {
      chosen = &c;
      chosen_ball = b;
    }
  }
  bool ambiguous = false;
  const double dist_tol = 1e-6 * dom.scale();
  for (const Candidate& c : cands) {
    if (c.value < cutoff) continue;
    const AxisBall b = dom.ball(c.u, c.v);
    if (std::max(std::abs(b.d - chosen_ball.d), std::abs(b.r - chosen_ball.r)) > dist_tol) {
      ambiguous = true;
    }
  }
  return {*chosen, ambiguous};
}

BestBallResult finish(const Candidate& c, bool ambiguous, const Domain& dom, const Evaluator& eval,
                      const SearchConfig& scfg) {
  BestBallResult out;
  out.s = dom.s;
  out.value = c.value;
  out.ball = dom.ball(c.u, c.v);
  out.contact = classify_contact(out.ball, dom.s, scfg.contact_tol * dom.scale());
  out.region = classify_region(out.contact);
  out.objective_evals = eval.evals();
  out.converged = c.converged;
  out.tie_ambiguous = ambiguous;
  return out;
}

/// Along a contact family the balls are images of each other under
/// y -> x + (1 + h)(y - x), so the objective's log-r derivative is
/// r^beta [avg Df . (y - x) + beta avg f]. Solving for its zero pins the
/// radius to quadrature precision instead of the sqrt(eps) of a maximizer.
void polish_contact(const RadialProfile& profile, const AmbientParams& params,
                    const QuadratureConfig& qcfg, const Domain& dom, const SearchConfig& scfg,
                    BestBallResult& out) {
  if (!out.contact.on_boundary() || !(dom.s > 0.0)) return;
  const double s = dom.s;
  const double side = out.contact.kind == ContactKind::boundary_outer ? 1.0 : -1.0;
  auto ball_at = [&](double r) { return AxisBall{std::max(0.0, s + side * r), r}; };
  auto slope = [&](double r) {
    const AxisBall b = ball_at(r);
    return gradient_radial_moment(profile, b, params, qcfg) -
           s * gradient_axial_component(profile, b, params, qcfg) +
           params.beta() * ball_average(profile, b, params, qcfg);
  };
  const double r0 = out.ball.r;
  const double r_hi = side > 0 ? dom.r_max : std::min(dom.r_max, s);
  double lo = r0, hi = r0, g_lo = slope(r0), g_hi = g_lo;
  if (g_lo == 0.0) return;
  // Walk outwards until the derivative changes sign.
  double step = 1e-6 * r0;
  bool bracketed = false;
  for (int k = 0; k < 12 && !bracketed; ++k, step *= 4.0) {
    if (g_lo > 0.0) {
      lo = hi;
      g_lo = g_hi;
      hi = std::min(r_hi, r0 + step);
      if (hi <= lo) return;
      g_hi = slope(hi);
      bracketed = g_hi <= 0.0;
    } else {
      hi = lo;
      g_hi = g_lo;
      lo = std::max(dom.r_min, r0 - step);
      if (lo >= hi) return;
      g_lo = slope(lo);
      bracketed = g_lo >= 0.0;
    }
  }
  if (!bracketed) return;
  std::uintmax_t iters = 100;
  const auto [a, b] = boost::math::tools::toms748_solve(
      slope, lo, hi, g_lo, g_hi, boost::math::tools::eps_tolerance<double>(50), iters);
  const double r = 0.5 * (a + b);
  const AxisBall ball = ball_at(r);
  const double value = std::pow(r, params.beta()) * ball_average(profile, ball, params, qcfg);
  if (value < out.value - scfg.tie_tol * std::abs(out.value)) return;
  out.ball = ball;
  out.value = value;
  out.contact = classify_contact(ball, s, scfg.contact_tol * dom.scale());
  out.region = classify_region(out.contact);
}

void check_search_inputs(const RadialProfile& profile, double s, const AmbientParams& params,
                         const SearchConfig& scfg, const QuadratureConfig& qcfg) {
  scfg.validate();
  qcfg.validate(profile.knots().size());
  if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("evaluation radius must be >= 0");
  if (!(l1_norm(profile, params) > 0.0)) throw ProfileError("profile is identically zero");
}

double row_step(const SearchConfig& scfg) { return std::log(10.0) / scfg.r_points_per_decade; }

/// Boundary-family searches around the best local maxima of one grid column.
void column_searches(Evaluator& eval, const Domain& dom, const std::vector<double>& us,
                     const std::vector<double>& column, double v, std::size_t row_limit,
                     const QuadratureConfig& qcfg, std::vector<Candidate>& out) {
  const std::size_t rows = std::min(row_limit, column.size());
  if (rows == 0) return;
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < rows; ++k) {
    const bool left_ok = k == 0 || column[k] >= column[k - 1];
    const bool right_ok = k + 1 >= rows || column[k] >= column[k + 1];
    if (left_ok && right_ok) peaks.push_back(k);
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t a, std::size_t b) { return column[a] > column[b]; });
  if (peaks.size() > 2) peaks.resize(2);
  const double u_cap = v == 0.0 ? std::min(dom.u_max, std::log(dom.s)) : dom.u_max;
  for (std::size_t k : peaks) {
    const double ua = k == 0 ? dom.u_min : us[k - 1];
    const double ub = std::min(k + 1 < us.size() ? us[k + 1] : dom.u_max, u_cap);
    out.push_back(edge_search(eval, v, ua, ub, qcfg));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Region region) {
  switch (region) {
    case Region::zero_derivative: return "zero_derivative";
    case Region::E1: return "E1";
    case Region::E2: return "E2";
    case Region::E3: return "E3";
  }
  return "unknown";
}

Region classify_region(const Contact& contact) {
  if (!contact.on_boundary()) return Region::zero_derivative;
  if (contact.c > kRegionUpperC) return Region::E1;
  if (contact.c < kRegionLowerC) return Region::E2;
  return Region::E3;
}

void SearchConfig::validate() const {
  if (r_points_per_decade < 1 || d_points_per_row < 2 || multistarts < 1 ||
      max_local_iterations < 1) {
    throw ParameterError("search grid sizes and iteration limits must be positive");
  }
  if (!(local_tol > 0.0) || !(tie_tol > 0.0) || !(contact_tol > 0.0)) {
    throw ParameterError("search tolerances must be positive");
  }
  if (!(r_min_fraction > 0.0) || !(r_min_fraction < 1.0)) {
    throw ParameterError("r_min fraction must lie in (0, 1)");
  }
  coarse.validate();
}

double objective(const RadialProfile& profile, double s, const AxisBall& ball,
                 const AmbientParams& params, const QuadratureConfig& cfg) {
  if (!contains_point(ball, s, 1e-12 * (s + ball.r))) {
    std::ostringstream os;
    os << "ball (d=" << ball.d << ", r=" << ball.r << ") does not contain s=" << s;
    throw GeometryError(os.str());
  }
  return std::pow(ball.r, params.beta()) * ball_average(profile, ball, params, cfg);
}

BestBallResult search(const RadialProfile& profile, double s, const AmbientParams& params,
                      const SearchConfig& scfg, const QuadratureConfig& qcfg,
                      std::span<const AxisBall> hints) {
  check_search_inputs(profile, s, params, scfg, qcfg);
  const Domain dom(s, profile.support_radius(), scfg.r_min_fraction);
  Evaluator eval(profile, params, dom);

  // Coarse grid.
  const double du = row_step(scfg);
  const int rows = std::max(2, static_cast<int>(std::ceil((dom.u_max - dom.u_min) / du)) + 1);
  const int cols = scfg.d_points_per_row;
  std::vector<double> us(rows);
  for (int k = 0; k < rows; ++k) us[k] = std::min(dom.u_min + k * du, dom.u_max);
  us.back() = dom.u_max;
  std::vector<double> grid(static_cast<std::size_t>(rows) * cols);
  auto at = [&](int k, int j) -> double& { return grid[static_cast<std::size_t>(k) * cols + j]; };
  for (int k = 0; k < rows; ++k) {
    for (int j = 0; j < cols; ++j) at(k, j) = eval(us[k], double(j) / (cols - 1), scfg.coarse);
  }

  std::vector<Candidate> cands;

  // Contact families.
  if (s > 0.0) {
    std::vector<double> column(rows);
    for (int k = 0; k < rows; ++k) column[k] = at(k, cols - 1);
    column_searches(eval, dom, us, column, 1.0, rows, qcfg, cands);
    std::size_t inner_rows = 0;
    while (inner_rows < us.size() && dom.radius(us[inner_rows]) < s) ++inner_rows;
    for (int k = 0; k < rows; ++k) column[k] = at(k, 0);
    column_searches(eval, dom, us, column, 0.0, inner_rows, qcfg, cands);
  }

  // Multistart local refinement from well-separated grid maxima.
  std::vector<int> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return grid[a] > grid[b]; });
  std::vector<std::pair<int, int>> seeds;
  for (int idx : order) {
    if (static_cast<int>(seeds.size()) >= scfg.multistarts) break;
    const int k = idx / cols, j = idx % cols;
    bool near = false;
    for (auto [sk, sj] : seeds) near = near || (std::abs(sk - k) <= 2 && std::abs(sj - j) <= 2);
    if (!near) seeds.emplace_back(k, j);
  }
  const double dv = 1.0 / (cols - 1);
  for (auto [k, j] : seeds) {
    const Candidate c = nelder_mead(eval, dom, us[k], double(j) / (cols - 1), du, dv, scfg, qcfg);
    cands.push_back(snap_to_contact(eval, dom, c, scfg.tie_tol, qcfg));
  }
  for (const AxisBall& h : hints) {
    const auto [u, v] = dom.coords(h);
    const Candidate c = nelder_mead(eval, dom, u, v, du, dv, scfg, qcfg);
    cands.push_back(snap_to_contact(eval, dom, c, scfg.tie_tol, qcfg));
  }

  const Selection sel = select(cands, dom, scfg.tie_tol);
  BestBallResult out = finish(sel.best, sel.ambiguous, dom, eval, scfg);
  polish_contact(profile, params, qcfg, dom, scfg, out);
  return out;
}

BestBallResult refine_from_hints(const RadialProfile& profile, const BestBallResult& base,
                                 const AmbientParams& params, const SearchConfig& scfg,
                                 const QuadratureConfig& qcfg, std::span<const AxisBall> hints) {
  check_search_inputs(profile, base.s, params, scfg, qcfg);
  const Domain dom(base.s, profile.support_radius(), scfg.r_min_fraction);
  Evaluator eval(profile, params, dom);
  const double du = row_step(scfg);
  const double dv = 1.0 / (scfg.d_points_per_row - 1);

  std::vector<Candidate> cands;
  for (const AxisBall& h : hints) {
    const auto [u, v] = dom.coords(h);
    cands.push_back(snap_to_contact(eval, dom, nelder_mead(eval, dom, u, v, du, dv, scfg, qcfg),
                                    scfg.tie_tol, qcfg));
    if (base.s > 0.0) {
      const double ua = std::max(dom.u_min, u - 3 * du);
      cands.push_back(edge_search(eval, 1.0, ua, std::min(dom.u_max, u + 3 * du), qcfg));
      const double cap = std::min({dom.u_max, std::log(base.s), u + 3 * du});
      if (cap > ua) cands.push_back(edge_search(eval, 0.0, ua, cap, qcfg));
    }
  }
  if (cands.empty()) return base;
  const Selection sel = select(cands, dom, scfg.tie_tol);
  if (!(sel.best.value > base.value + scfg.tie_tol * std::abs(base.value))) {
    BestBallResult kept = base;
    kept.objective_evals += eval.evals();
    return kept;
  }
  BestBallResult out = finish(sel.best, sel.ambiguous, dom, eval, scfg);
  polish_contact(profile, params, qcfg, dom, scfg, out);
  out.objective_evals += base.objective_evals;
  return out;
}

double derivative_by_formula(const RadialProfile& profile, const BestBallResult& result,
                             const AmbientParams& params, const QuadratureConfig& cfg) {
  if (!result.contact.on_boundary()) return 0.0;
  return std::pow(result.ball.r, params.beta()) *
         gradient_axial_component(profile, result.ball, params, cfg);
}

namespace {

/// Fornberg weights of the first derivative at z from nodes x.
std::vector<double> derivative_weights(double z, std::span<const double> x) {
  const std::size_t m = x.size();
  std::vector<std::array<double, 2>> c(m, {0.0, 0.0});
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < m; ++i) {
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        c[i][1] = c1 * (c[i - 1][0] - c5 * c[i - 1][1]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      c[j][1] = (c4 * c[j][1] - c[j][0]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = c[i][1];
  return w;
}

}  // namespace

FiniteDifference derivative_by_fd(const MaximalProfile& mp, double jump_threshold) {
  const std::size_t n = mp.s.size();
  if (n < 3 || mp.m.size() != n) {
    throw ParameterError("finite differences need at least 3 grid points with values");
  }
  FiniteDifference fd;
  fd.derivative.resize(n);
  fd.corner.assign(n, false);
  const std::vector<double>& x = mp.s;
  const std::vector<double>& y = mp.m;
  // Five-point stencils (three on short grids), centred where possible.
  const std::size_t width = std::min<std::size_t>(n, 5);
  std::vector<std::size_t> first(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= width / 2 ? i - width / 2 : 0;
    first[i] = std::min(lo, n - width);
    const auto w = derivative_weights(x[i], std::span(x).subspan(first[i], width));
    double acc = 0.0;
    for (std::size_t k = 0; k < width; ++k) acc += w[k] * y[first[i] + k];
    fd.derivative[i] = acc;
  }
  if (mp.results.size() == n) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const BestBallResult& a = mp.results[i];
      const BestBallResult& b = mp.results[i + 1];
      if (a.contact.kind != b.contact.kind) {
        // m' has a square-root onset at a change of contact, so any stencil
        // touching the two transition points is unreliable.
        for (std::size_t k = 0; k < n; ++k) {
          if (first[k] <= i + 1 && i < first[k] + width) fd.corner[k] = true;
        }
        continue;
      }
      bool jump = false;
      if (a.contact.on_boundary()) {
        // Smooth best-ball paths move by about the grid step; anything beyond
        // that plus the relative threshold is a branch switch.
        const double moved = std::max(std::abs(a.ball.d - b.ball.d), std::abs(a.ball.r - b.ball.r));
        const double allowed =
            jump_threshold * std::max(a.ball.r, b.ball.r) + 2.0 * std::abs(b.s - a.s);
        jump = moved > allowed;
      }
      if (!jump) continue;
      // Every stencil holding both sides of the jump is suspect.
      for (std::size_t k = 0; k < n; ++k) {
        if (first[k] <= i && i + 1 < first[k] + width) fd.corner[k] = true;
      }
    }
  }
  return fd;
}

MaximalProfile maximal_profile(const RadialProfile& profile, const GridSpec& grid,
                               const AmbientParams& params, const SearchConfig& scfg,
                               const QuadratureConfig& qcfg, bool use_hints) {
  MaximalProfile mp;
  mp.s = grid.points();
  const std::size_t n = mp.s.size();
  mp.results.resize(n);
  parallel_for(n, [&](std::size_t i) {
    mp.results[i] = search(profile, mp.s[i], params, scfg, qcfg);
  });

  if (use_hints && n > 1) {
    std::vector<BestBallResult> refined(n);
    parallel_for(n, [&](std::size_t i) {
      std::vector<AxisBall> hints;
      for (std::size_t j : {i - 1, i + 1}) {
        if (j >= n) continue;  // wraps for i = 0
        const AxisBall b = mp.results[j].ball;
        const double k = mp.s[i] / mp.s[j];
        hints.push_back(b);
        hints.push_back({b.d * k, b.r * k});
      }
      refined[i] = refine_from_hints(profile, mp.results[i], params, scfg, qcfg, hints);
    });
    mp.results = std::move(refined);
  }

  mp.m.resize(n);
  mp.dm_formula.resize(n);
  for (std::size_t i = 0; i < n; ++i) mp.m[i] = mp.results[i].value;
  parallel_for(n, [&](std::size_t i) {
    mp.dm_formula[i] = derivative_by_formula(profile, mp.results[i], params, qcfg);
  });
  if (n >= 3) {
    FiniteDifference fd = derivative_by_fd(mp);
    mp.dm_fd = std::move(fd.derivative);
    mp.corner = std::move(fd.corner);
  } else {
    mp.dm_fd = mp.dm_formula;
    mp.corner.assign(n, false);
  }
  return mp;
}

}  // namespace maxvar
