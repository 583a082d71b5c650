#pragma once

#include <string_view>

#include "maxvar/radial_core.hpp"

namespace maxvar {

/// Ball B(d e, r) whose center lies on the ray through the origin and the
/// evaluation point x = s e. Rotations about that axis fix x, |z| and |x - z|,
/// so such balls are the only ones the search has to consider.
struct AxisBall {
  double d;
  double r;

  bool operator==(const AxisBall&) const = default;
};

enum class ContactKind { interior, boundary_inner, boundary_outer };

std::string_view to_string(ContactKind kind);

/// How the evaluation point sits in a ball; c = d / s (0 when s = 0).
struct Contact {
  ContactKind kind;
  double c;

  bool on_boundary() const noexcept { return kind != ContactKind::interior; }
};

/// |d - s| <= r + tol.
bool contains_point(const AxisBall& ball, double s, double tol = 0.0);

/// Polar angle of the cap {|y| = t} ∩ B(d e, r) seen from the origin:
/// arccos(clamp((t^2 + d^2 - r^2) / (2 t d), -1, 1)). Requires t, d, r > 0.
double cap_angle(double t, double d, double r);

/// int_0^theta sin^k(phi) dphi for k >= 0.
double sin_power_integral(int k, double theta);

/// H^(n-1) measure of {|y| = t} ∩ B(d e, r), n >= 2.
double cap_area(double t, double d, double r, const AmbientParams& params);

/// int over the same cap of cos(angle(y, e)) dH^(n-1), n >= 2. Nonnegative.
double cap_first_moment(double t, double d, double r, const AmbientParams& params);

/// Classifies the evaluation point s e against `ball` with absolute
/// tolerance `tol`. Throws GeometryError when the ball does not contain the
/// point (|d - s| > r + tol). At s = 0 the point is always reported as
/// interior: M_beta f is radial, so its derivative vanishes at the origin.
Contact classify_contact(const AxisBall& ball, double s, double tol);

}  // namespace maxvar
