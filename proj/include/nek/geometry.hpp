#pragma once

#include "nek/vec3.hpp"

namespace nek {

// Canonical domain: the ball of radius R in R^3 with the flat metric.
// Every geometric query used elsewhere (curvatures, boundary exponential
// map, geodesic and chord distances) is closed-form here, which is what
// makes the boundary-layer constants independently checkable.
struct DomainModel {
  double radius = 1.0;
  double volume = 0.0;
  double boundary_area = 0.0;
};

DomainModel unit_ball(double radius);

// Signed distance to the boundary sphere: negative inside, zero on the
// boundary; its gradient on the boundary is the outward normal.
double signed_distance(const DomainModel& d, Vec3 x);

// Orthonormal boundary frame {E1, E2, nu} at a boundary point, together
// with the principal curvatures in the inward-normal convention (sphere of
// radius R has lambda1 = lambda2 = 1/R, H = 1/R > 0). det[E1 E2 nu] > 0.
struct BoundaryFrame {
  Vec3 point;
  Vec3 nu;
  Vec3 e1;
  Vec3 e2;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double mean_curvature = 0.0;
};

// The sphere's shape operator is isotropic, so any tangent pair works;
// the tie-break is E1 = normalize(z_hat x nu) when defined, else (1,0,0).
BoundaryFrame boundary_frame(const DomainModel& d, Vec3 x);

// Absorbing window: image of the ellipse {t1^2 + t2^2/a^2 <= 1} under the
// boundary exponential map scaled by eps. a = 1 is a geodesic disk; the
// semi-axes are eps along E1 and a*eps along E2.
struct WindowSpec {
  DomainModel domain;
  BoundaryFrame frame;   // frame at the window center
  double eps = 0.0;
  double a = 1.0;
  bool full_boundary = false;
};

WindowSpec make_window(const DomainModel& d, Vec3 center, double eps, double a);

// Degenerate window covering all of the boundary. Used by the SDE
// calibration runs, where the absorbing set is the whole sphere.
WindowSpec full_boundary_window(const DomainModel& d);

bool window_membership(const WindowSpec& w, Vec3 y);

// Chart point exp_{x*;h}(eps*(t1 E1 + t2 E2)).
Vec3 rescaled_chart(const WindowSpec& w, double t1, double t2);

// Sphere maps used throughout. Tangent vectors carry lengths (|v| is the
// geodesic distance travelled by exp).
Vec3 sphere_exp(const DomainModel& d, Vec3 x, Vec3 tangent);
Vec3 sphere_log(const DomainModel& d, Vec3 x, Vec3 y);
double geodesic_distance(const DomainModel& d, Vec3 x, Vec3 y);
double chord_distance(Vec3 x, Vec3 y);

// Area of the geodesic cap of radius eps (the a = 1 window).
double cap_area(const DomainModel& d, double eps);

}  // namespace nek
