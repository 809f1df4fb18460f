#include "nek/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nek {

namespace {

constexpr double kBoundaryRelTol = 1e-10;

// Snap x to the boundary sphere if it is within tolerance, else throw.
Vec3 require_on_boundary(const DomainModel& d, Vec3 x, const char* who) {
  const double r = norm(x);
  if (std::abs(r - d.radius) > kBoundaryRelTol * d.radius)
    throw std::domain_error(std::string(who) + ": point is not on the boundary");
  return (d.radius / r) * x;
}

}  // namespace

DomainModel unit_ball(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("unit_ball: radius must be > 0");
  DomainModel d;
  d.radius = radius;
  d.volume = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  d.boundary_area = 4.0 * std::numbers::pi * radius * radius;
  return d;
}

double signed_distance(const DomainModel& d, Vec3 x) { return norm(x) - d.radius; }

BoundaryFrame boundary_frame(const DomainModel& d, Vec3 x) {
  const Vec3 p = require_on_boundary(d, x, "boundary_frame");
  BoundaryFrame f;
  f.point = p;
  f.nu = p / d.radius;
  const Vec3 zhat{0.0, 0.0, 1.0};
  const Vec3 c = cross(zhat, f.nu);
  if (norm(c) > 1e-8) {
    f.e1 = normalized(c);
  } else {
    f.e1 = Vec3{1.0, 0.0, 0.0};
  }
  f.e2 = cross(f.nu, f.e1);
  f.lambda1 = 1.0 / d.radius;
  f.lambda2 = 1.0 / d.radius;
  f.mean_curvature = 1.0 / d.radius;
  return f;
}

WindowSpec make_window(const DomainModel& d, Vec3 center, double eps, double a) {
  if (!(eps > 0.0)) throw std::invalid_argument("make_window: eps must be > 0");
  // The ellipse must stay well inside one chart of the boundary exponential
  // map; half the injectivity radius pi*R is a comfortable bound.
  if (!(eps < 0.5 * std::numbers::pi * d.radius))
    throw std::invalid_argument("make_window: eps too large for the boundary chart");
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("make_window: a must be in (0, 1]");
  WindowSpec w;
  w.domain = d;
  w.frame = boundary_frame(d, center);
  w.eps = eps;
  w.a = a;
  return w;
}

WindowSpec full_boundary_window(const DomainModel& d) {
  WindowSpec w;
  w.domain = d;
  w.frame = boundary_frame(d, Vec3{0.0, 0.0, d.radius});
  w.eps = std::numbers::pi * d.radius;
  w.a = 1.0;
  w.full_boundary = true;
  return w;
}

bool window_membership(const WindowSpec& w, Vec3 y) {
  if (w.full_boundary) {
    require_on_boundary(w.domain, y, "window_membership");
    return true;
  }
  const Vec3 p = require_on_boundary(w.domain, y, "window_membership");
  if (w.a == 1.0) {
    // Geodesic cap: compare the polar angle against eps/R via cosines.
    const double c = dot(p, w.frame.point) / (w.domain.radius * w.domain.radius);
    return c >= std::cos(w.eps / w.domain.radius) - 1e-14;
  }
  const Vec3 v = sphere_log(w.domain, w.frame.point, p);
  const double t1 = dot(v, w.frame.e1) / w.eps;
  const double t2 = dot(v, w.frame.e2) / w.eps;
  return t1 * t1 + t2 * t2 / (w.a * w.a) <= 1.0 + 1e-12;
}

Vec3 rescaled_chart(const WindowSpec& w, double t1, double t2) {
  const double tn = std::sqrt(t1 * t1 + t2 * t2);
  if (tn > 2.0 || w.eps * tn >= std::numbers::pi * w.domain.radius)
    throw std::domain_error("rescaled_chart: point outside the chart");
  const Vec3 tangent = w.eps * (t1 * w.frame.e1 + t2 * w.frame.e2);
  return sphere_exp(w.domain, w.frame.point, tangent);
}

Vec3 sphere_exp(const DomainModel& d, Vec3 x, Vec3 tangent) {
  const Vec3 p = require_on_boundary(d, x, "sphere_exp");
  const double len = norm(tangent);
  if (len == 0.0) return p;
  const double ang = len / d.radius;
  const Vec3 u = tangent / len;
  return std::cos(ang) * p + (d.radius * std::sin(ang)) * u;
}

Vec3 sphere_log(const DomainModel& d, Vec3 x, Vec3 y) {
  const Vec3 p = require_on_boundary(d, x, "sphere_log");
  const Vec3 q = require_on_boundary(d, y, "sphere_log");
  const double R = d.radius;
  const double c = std::clamp(dot(p, q) / (R * R), -1.0, 1.0);
  const Vec3 tang = q - (dot(p, q) / (R * R)) * p;
  const double tn = norm(tang);
  if (tn < 1e-300) {
    if (c > 0.0) return Vec3{0.0, 0.0, 0.0};
    throw std::domain_error("sphere_log: antipodal point is outside the chart");
  }
  const double ang = std::acos(c);
  return (R * ang / tn) * tang;
}

double geodesic_distance(const DomainModel& d, Vec3 x, Vec3 y) {
  const Vec3 p = require_on_boundary(d, x, "geodesic_distance");
  const Vec3 q = require_on_boundary(d, y, "geodesic_distance");
  const double R = d.radius;
  // atan2 form is accurate for both small and near-antipodal separations.
  const double cn = norm(cross(p, q));
  const double dt = dot(p, q);
  return R * std::atan2(cn / (R * R), dt / (R * R));
}

double chord_distance(Vec3 x, Vec3 y) { return norm(x - y); }

double cap_area(const DomainModel& d, double eps) {
  const double R = d.radius;
  return 2.0 * std::numbers::pi * R * R * (1.0 - std::cos(eps / R));
}

}  // namespace nek
