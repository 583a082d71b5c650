#include "maxvar/ball_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "maxvar/error.hpp"
#include "monomial.hpp"

namespace maxvar {
namespace {

// cos of the cap angle, unclamped.
double cap_cosine(double t, double d, double r) {
  return ((t - r) * (t + r) + d * d) / (2.0 * t * d);
}

}  // namespace

std::string_view to_string(ContactKind kind) {
  switch (kind) {
    case ContactKind::interior: return "interior";
    case ContactKind::boundary_inner: return "boundary_inner";
    case ContactKind::boundary_outer: return "boundary_outer";
  }
  return "unknown";
}

bool contains_point(const AxisBall& ball, double s, double tol) {
  return std::abs(ball.d - s) <= ball.r + tol;
}

double cap_angle(double t, double d, double r) {
  const double x = cap_cosine(t, d, r);
  if (x >= 1.0) return 0.0;
  if (x <= -1.0) return std::numbers::pi;
  return std::acos(x);
}

double sin_power_integral(int k, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  switch (k) {
    case 0: return theta;
    case 1: {
      const double h = std::sin(0.5 * theta);
      return 2.0 * h * h;
    }
    default: break;
  }
  // I_k = -sin^(k-1) cos / k + (k-1)/k I_(k-2)
  double prev = (k % 2 == 0) ? theta : 2.0 * std::pow(std::sin(0.5 * theta), 2);
  double spow = (k % 2 == 0) ? s : s * s;
  for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) {
    prev = -spow * c / j + (j - 1.0) / j * prev;
    spow *= s * s;
  }
  return prev;
}

double cap_area(double t, double d, double r, const AmbientParams& params) {
  const int n = params.n();
  if (t <= 0.0) return 0.0;
  const double full = params.sigma() * detail::int_pow(t, n - 1);
  if (d <= 0.0) return t < r ? full : 0.0;
  const double x = cap_cosine(t, d, r);
  if (x >= 1.0) return 0.0;
  if (x <= -1.0) return full;
  const double theta = std::acos(x);
  return params.sigma_lower() * detail::int_pow(t, n - 1) * sin_power_integral(n - 2, theta);
}

double cap_first_moment(double t, double d, double r, const AmbientParams& params) {
  const int n = params.n();
  if (t <= 0.0 || d <= 0.0) return 0.0;
  const double x = cap_cosine(t, d, r);
  if (x >= 1.0 || x <= -1.0) return 0.0;
  const double sin_theta = std::sqrt((1.0 - x) * (1.0 + x));
  return params.sigma_lower() * detail::int_pow(t, n - 1) *
         detail::int_pow(sin_theta, n - 1) / (n - 1);
}

Contact classify_contact(const AxisBall& ball, double s, double tol) {
  const double gap = std::abs(ball.d - s);
  if (!(ball.r > 0.0) || gap > ball.r + tol) {
    std::ostringstream os;
    os << "ball (d=" << ball.d << ", r=" << ball.r << ") does not contain s=" << s;
    throw GeometryError(os.str());
  }
  const double c = s > 0.0 ? ball.d / s : 0.0;
  if (std::abs(gap - ball.r) <= tol && s > 0.0 && ball.d != s) {
    return {ball.d < s ? ContactKind::boundary_inner : ContactKind::boundary_outer, c};
  }
  return {ContactKind::interior, c};
}

}  // namespace maxvar
