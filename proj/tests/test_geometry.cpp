#include <cmath>
#include <stdexcept>
#include <numbers>

#include "doctest.h"
#include "nek/geometry.hpp"
#include "nek/rng.hpp"

using namespace nek;

namespace {
constexpr double kPi = std::numbers::pi;

Vec3 random_boundary_point(const DomainModel& d, Xoshiro256pp& rng) {
  const double mu = 2.0 * rng.next_uniform() - 1.0;
  const double az = 2.0 * kPi * rng.next_uniform();
  const double s = std::sqrt(1.0 - mu * mu);
  return d.radius * Vec3{s * std::cos(az), s * std::sin(az), mu};
}
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("unit ball closed forms") {
  const DomainModel b1 = unit_ball(1.0);
  CHECK(b1.volume == doctest::Approx(4.0 / 3.0 * kPi).epsilon(1e-12));
  CHECK(b1.boundary_area == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  const DomainModel b2 = unit_ball(2.0);
  CHECK(b2.boundary_area == doctest::Approx(16.0 * kPi).epsilon(1e-12));
  CHECK_THROWS_AS(unit_ball(0.0), std::invalid_argument);
  CHECK_THROWS_AS(unit_ball(-1.0), std::invalid_argument);
}

TEST_CASE("signed distance and normal") {
  const DomainModel b = unit_ball(1.0);
  CHECK(signed_distance(b, Vec3{0.5, 0, 0}) < 0.0);
  CHECK(signed_distance(b, Vec3{0, 0, 1}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(signed_distance(b, Vec3{0, 1.5, 0}) > 0.0);
  // Outward normal = gradient of the signed distance on the boundary.
  const Vec3 x{0, 0, 1};
  const double h = 1e-6;
  const Vec3 grad{
      (signed_distance(b, x + Vec3{h, 0, 0}) - signed_distance(b, x - Vec3{h, 0, 0})) / (2 * h),
      (signed_distance(b, x + Vec3{0, h, 0}) - signed_distance(b, x - Vec3{0, h, 0})) / (2 * h),
      (signed_distance(b, x + Vec3{0, 0, h}) - signed_distance(b, x - Vec3{0, 0, h})) / (2 * h)};
  const Vec3 nu = boundary_frame(b, x).nu;
  CHECK(norm(grad - nu) < 1e-6);
}

TEST_CASE("boundary frame curvatures and tie-break") {
  const DomainModel b = unit_ball(1.0);
  const BoundaryFrame north = boundary_frame(b, Vec3{0, 0, 1});
  CHECK(north.lambda1 == doctest::Approx(1.0));
  CHECK(north.lambda2 == doctest::Approx(1.0));
  CHECK(north.mean_curvature == doctest::Approx(1.0));
  CHECK(north.e1.x == doctest::Approx(1.0));  // pole tie-break

  const DomainModel b2 = unit_ball(2.0);
  const BoundaryFrame f2 = boundary_frame(b2, Vec3{2, 0, 0});
  CHECK(f2.mean_curvature == doctest::Approx(0.5));

  CHECK_THROWS_AS(boundary_frame(b, Vec3{0, 0, 0}), std::domain_error);
}

TEST_CASE("frame orthonormality and orientation over random samples") {
  const DomainModel b = unit_ball(1.0);
  Xoshiro256pp rng(7, 0);
  for (int i = 0; i < 50; ++i) {
    const BoundaryFrame f = boundary_frame(b, random_boundary_point(b, rng));
    CHECK(std::abs(dot(f.e1, f.e1) - 1.0) < 1e-12);
    CHECK(std::abs(dot(f.e2, f.e2) - 1.0) < 1e-12);
    CHECK(std::abs(dot(f.nu, f.nu) - 1.0) < 1e-12);
    CHECK(std::abs(dot(f.e1, f.e2)) < 1e-12);
    CHECK(std::abs(dot(f.e1, f.nu)) < 1e-12);
    CHECK(std::abs(dot(f.e2, f.nu)) < 1e-12);
    CHECK(dot(cross(f.e1, f.e2), f.nu) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("window membership") {
  const DomainModel b = unit_ball(1.0);
  const Vec3 north{0, 0, 1};
  const WindowSpec disk = make_window(b, north, 0.1, 1.0);
  CHECK(window_membership(disk, north));
  const Vec3 just_outside = rescaled_chart(disk, 1.001, 0.0);
  CHECK_FALSE(window_membership(disk, just_outside));
  const Vec3 just_inside = rescaled_chart(disk, 0.999, 0.0);
  CHECK(window_membership(disk, just_inside));

  const WindowSpec ellipse = make_window(b, north, 0.1, 0.5);
  // Along E2 the semi-axis is a*eps, so geodesic distance 0.8*eps is out.
  CHECK_FALSE(window_membership(ellipse, rescaled_chart(ellipse, 0.0, 0.8)));
  CHECK(window_membership(ellipse, rescaled_chart(ellipse, 0.0, 0.49)));
  CHECK(window_membership(ellipse, rescaled_chart(ellipse, 0.9, 0.0)));

  CHECK_THROWS_AS(window_membership(disk, Vec3{0, 0, 0.2}), std::domain_error);
  CHECK_THROWS_AS(make_window(b, north, 0.1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(make_window(b, north, -0.1, 1.0), std::invalid_argument);
}

TEST_CASE("rescaled chart is a unit-speed geodesic chart") {
  const DomainModel b = unit_ball(1.0);
  const WindowSpec w = make_window(b, Vec3{0, 0, 1}, 0.05, 1.0);
  const Vec3 center = rescaled_chart(w, 0.0, 0.0);
  CHECK(norm(center - Vec3{0, 0, 1}) < 1e-14);
  const double d = geodesic_distance(b, Vec3{0, 0, 1}, rescaled_chart(w, 1.0, 0.0));
  CHECK(d == doctest::Approx(w.eps).epsilon(1e-12));
  CHECK_THROWS_AS(rescaled_chart(w, 3.0, 0.0), std::domain_error);
}

TEST_CASE("chord distance residual is first order in eps") {
  // With x = chart(t'), y = chart(s') and r = |t' - s'| fixed, the
  // closed-form sphere distances give
  //   1/d_g - 1/(eps r) = O(eps),
  // so the log-log slope of the residual against eps is one.
  const DomainModel b = unit_ball(1.0);
  const Vec3 north{0, 0, 1};
  const double t[2] = {0.3, -0.2}, s[2] = {-0.5, 0.4};
  const double r = std::hypot(t[0] - s[0], t[1] - s[1]);
  double residual[3];
  const double epses[3] = {0.1, 0.05, 0.025};
  for (int i = 0; i < 3; ++i) {
    const WindowSpec w = make_window(b, north, epses[i], 1.0);
    const Vec3 x = rescaled_chart(w, t[0], t[1]);
    const Vec3 y = rescaled_chart(w, s[0], s[1]);
    residual[i] = std::abs(1.0 / chord_distance(x, y) - 1.0 / (epses[i] * r));
  }
  const double slope1 = std::log2(residual[0] / residual[1]);
  const double slope2 = std::log2(residual[1] / residual[2]);
  CHECK(slope1 == doctest::Approx(1.0).epsilon(0.2));
  CHECK(slope2 == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("chart is an isometry at the center to quadratic order") {
  const DomainModel b = unit_ball(1.0);
  const Vec3 north{0, 0, 1};
  const double t[2] = {0.7, 0.1}, s[2] = {-0.3, -0.6};
  const double r = std::hypot(t[0] - s[0], t[1] - s[1]);
  double defect[2];
  const double epses[2] = {0.1, 0.05};
  for (int i = 0; i < 2; ++i) {
    const WindowSpec w = make_window(b, north, epses[i], 1.0);
    const double dh =
        geodesic_distance(b, rescaled_chart(w, t[0], t[1]), rescaled_chart(w, s[0], s[1]));
    defect[i] = std::abs(dh / (epses[i] * r) - 1.0);
  }
  // Multiplicative defect is O(eps^2 r^2): halving eps divides it by ~4.
  CHECK(defect[0] / defect[1] == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("cap area matches pi eps^2 with an O(eps^4) residual") {
  const DomainModel b = unit_ball(1.0);
  const double e1 = 0.2, e2 = 0.1;
  const double r1 = std::abs(cap_area(b, e1) - kPi * e1 * e1);
  const double r2 = std::abs(cap_area(b, e2) - kPi * e2 * e2);
  CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.1));
  CHECK(r1 / (e1 * e1 * e1 * e1) == doctest::Approx(kPi / 12.0).epsilon(0.05));
}

}  // TEST_SUITE
