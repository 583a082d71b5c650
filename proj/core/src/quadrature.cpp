#include "maxvar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "maxvar/error.hpp"

namespace maxvar {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Segment {
  double a;       // original piece
  double b;
  double u0;      // sub-range of the smoothing variable
  double u1;
  double value;
  double error;
  double l1;
};

void evaluate(const std::function<double(double)>& f, Segment& seg) {
  const double width = seg.b - seg.a;
  auto g = [&](double u) {
    const double t = seg.a + width * u * u * (3.0 - 2.0 * u);
    const double jac = 6.0 * width * u * (1.0 - u);
    if (jac == 0.0) return 0.0;
    return f(t) * jac;
  };
  seg.value = Rule::integrate(g, seg.u0, seg.u1, 0, 0.0, &seg.error, &seg.l1);
}

}  // namespace

void QuadratureConfig::validate(std::size_t knot_count) const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw ParameterError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1 || static_cast<std::size_t>(max_subdivisions) < knot_count) {
    throw ParameterError("quadrature subdivision limit is below the profile knot count");
  }
}

QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                           const QuadratureConfig& cfg) {
  QuadratureResult out;
  if (breaks.size() < 2) return out;

  std::vector<Segment> segs;
  segs.reserve(breaks.size() + 16);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Segment s{breaks[i], breaks[i + 1], 0.0, 1.0, 0.0, 0.0, 0.0};
    evaluate(f, s);
    segs.push_back(s);
  }

  auto totals = [&](double& value, double& error, double& l1) {
    value = error = l1 = 0.0;
    for (const Segment& s : segs) {
      value += s.value;
      error += s.error;
      l1 += s.l1;
    }
  };

  double value = 0.0, error = 0.0, l1 = 0.0;
  totals(value, error, l1);
  int subdivisions = static_cast<int>(segs.size());
  while (error > std::max(cfg.abs_tol, cfg.rel_tol * l1)) {
    if (subdivisions >= cfg.max_subdivisions) {
      std::ostringstream os;
      os << "quadrature did not converge: error estimate " << error << " exceeds target "
         << std::max(cfg.abs_tol, cfg.rel_tol * l1) << " after " << subdivisions
         << " subdivisions";
      throw QuadratureError(os.str(), error, std::max(cfg.abs_tol, cfg.rel_tol * l1));
    }
    auto worst = std::max_element(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) {
      return x.error < y.error;
    });
    const double mid = 0.5 * (worst->u0 + worst->u1);
    Segment right = *worst;
    worst->u1 = mid;
    right.u0 = mid;
    evaluate(f, *worst);
    evaluate(f, right);
    segs.push_back(right);
    ++subdivisions;
    totals(value, error, l1);
  }
  out.value = value;
  out.error = error;
  out.subdivisions = subdivisions;
  return out;
}

}  // namespace maxvar
