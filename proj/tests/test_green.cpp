#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "nek/error.hpp"
#include "nek/green.hpp"
#include "nek/quadrature.hpp"
#include "nek/rng.hpp"

using namespace nek;

namespace {
constexpr double kPi = std::numbers::pi;

Vec3 random_interior_point(double max_r, Xoshiro256pp& rng) {
  const double r = max_r * std::cbrt(rng.next_uniform());
  const double mu = 2.0 * rng.next_uniform() - 1.0;
  const double az = 2.0 * kPi * rng.next_uniform();
  const double s = std::sqrt(1.0 - mu * mu);
  return Vec3{r * s * std::cos(az), r * s * std::sin(az), r * mu};
}

// Spherical product quadrature of f over the unit sphere surface.
double sphere_surface_integral(const std::function<double(Vec3)>& f, int nmu, int naz) {
  const GaussLegendre& gm = gauss_legendre(nmu);
  KahanSum acc;
  for (int j = 0; j < nmu; ++j) {
    const double mu = gm.nodes[j];
    const double s = std::sqrt(1.0 - mu * mu);
    for (int k = 0; k < naz; ++k) {
      const double az = 2.0 * kPi * (k + 0.5) / naz;
      acc.add(gm.weights[j] * (2.0 * kPi / naz) *
              f(Vec3{s * std::cos(az), s * std::sin(az), mu}));
    }
  }
  return acc.value();
}
}  // namespace

TEST_SUITE("green") {

TEST_CASE("script_G closed form on the ball") {
  const DomainModel b = unit_ball(1.0);
  CHECK(ball_script_G(b, Vec3{0, 0, 0}) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(ball_script_G(b, Vec3{0, 0, 1}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(ball_script_G(b, Vec3{1.5, 0, 0}), std::domain_error);

  // Radial derivative at the boundary equals -|M|/|bdy| = -1/3.
  const double h = 1e-6;
  const double d =
      (ball_script_G(b, Vec3{0, 0, 1.0}) - ball_script_G(b, Vec3{0, 0, 1.0 - h})) / h;
  CHECK(d == doctest::Approx(-1.0 / 3.0).epsilon(1e-5));

  // Volume integral 4 pi / 45, by radial quadrature.
  const double integral =
      integrate_gl([&](double r) { return (1.0 - r * r) / 6.0 * 4.0 * kPi * r * r; }, 0.0, 1.0, 64);
  CHECK(integral == doctest::Approx(4.0 * kPi / 45.0).epsilon(1e-12));
  GreenProvider p = ball_green_provider(b);
  CHECK(p.script_G_volume_integral() == doctest::Approx(integral).epsilon(1e-12));

  // Zero boundary mean of script_G, by surface quadrature.
  const double bd_mean =
      sphere_surface_integral([&](Vec3 x) { return ball_script_G(b, x); }, 32, 64);
  CHECK(std::abs(bd_mean) < 1e-6);
}

TEST_CASE("interior Green kernel: symmetry") {
  const DomainModel b = unit_ball(1.0);
  Xoshiro256pp rng(11, 0);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = random_interior_point(0.95, rng);
    const Vec3 z = random_interior_point(0.95, rng);
    if (norm(x - z) < 1e-3) continue;
    CHECK(ball_interior_green(b, x, z) ==
          doctest::Approx(ball_interior_green(b, z, x)).epsilon(1e-10));
  }
}

TEST_CASE("interior Green kernel solves the boundary value problem") {
  const DomainModel b = unit_ball(1.0);
  const Vec3 x{0.3, -0.1, 0.2};

  // Harmonic in z away from the pole (finite-difference Laplacian).
  const double h = 1e-4;
  const Vec3 z{-0.4, 0.35, 0.1};
  double lap = -6.0 * ball_interior_green(b, x, z);
  for (const Vec3 e : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
    lap += ball_interior_green(b, x, z + h * e) + ball_interior_green(b, x, z - h * e);
  }
  lap /= h * h;
  CHECK(std::abs(lap) < 1e-4);

  // Normal derivative -1/|bdy| = -1/(4 pi) on the boundary.
  const Vec3 zb = normalized(Vec3{0.2, 0.9, -0.4});
  const double dG =
      (ball_interior_green(b, x, zb) - ball_interior_green(b, x, (1.0 - h) * zb)) / h;
  CHECK(dG == doctest::Approx(-1.0 / (4.0 * kPi)).epsilon(1e-3));

  // Zero boundary mean at several interior x.
  Xoshiro256pp rng(13, 0);
  for (int i = 0; i < 3; ++i) {
    const Vec3 xi = random_interior_point(0.8, rng);
    const double mean =
        sphere_surface_integral([&](Vec3 z2) { return ball_interior_green(b, xi, z2); }, 64, 128);
    CHECK(std::abs(mean) < 1e-6);
  }
}

TEST_CASE("volume integral of G(., x*) vanishes on the ball") {
  const DomainModel b = unit_ball(1.0);
  const Vec3 xstar{0, 0, 1};
  // Axisymmetric reduction: integrate over (r, mu) with weight 2 pi r^2.
  const GaussLegendre& gr = gauss_legendre(220);
  const GaussLegendre& gm = gauss_legendre(220);
  KahanSum acc;
  for (int i = 0; i < 220; ++i) {
    const double r = 0.5 * (gr.nodes[i] + 1.0);
    for (int j = 0; j < 220; ++j) {
      const double mu = gm.nodes[j];
      const double s = std::sqrt(1.0 - mu * mu);
      const Vec3 x{r * s, 0.0, r * mu};
      acc.add(0.5 * gr.weights[i] * gm.weights[j] * 2.0 * kPi * r * r *
              ball_interior_green(b, xstar, x));
    }
  }
  CHECK(std::abs(acc.value()) < 2e-3);
  CHECK(ball_green_provider(b).green_volume_integral(xstar) == 0.0);
}

TEST_CASE("singular kernel terms on the sphere") {
  const DomainModel b = unit_ball(1.0);
  const Vec3 x = normalized(Vec3{1.0, 0.2, 0.1});
  const BoundaryFrame f = boundary_frame(b, x);
  const Vec3 y = sphere_exp(b, x, 0.1 * f.e1);

  SUBCASE("zero drift: coulomb exact, umbilic kills the II difference") {
    const SingularKernelTerms t = kernel_singular(b, x, y, f, Vec3{0, 0, 0});
    const double dg = 2.0 * std::sin(0.05);
    CHECK(t.coulomb == doctest::Approx(1.0 / (2.0 * kPi * dg)).epsilon(1e-12));
    CHECK(t.ii_difference == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(t.drift_directional == 0.0);
    // H = 1: log term is -log(0.1)/(4 pi) = +0.1832...
    CHECK(t.log_term == doctest::Approx(-std::log(0.1) / (4.0 * kPi)).epsilon(1e-12));
    CHECK(t.total_singular ==
          doctest::Approx(t.coulomb + t.log_term + t.ii_difference).epsilon(1e-15));
  }

  SUBCASE("drift term is odd in the direction and flips with the convention") {
    // Tangential force at an equator point.
    const Vec3 xe{1, 0, 0};
    const BoundaryFrame fe = boundary_frame(b, xe);
    const Vec3 F{0, 0, 1};  // tangential at xe
    const Vec3 yp = sphere_exp(b, xe, 0.05 * Vec3{0, 0, 1});
    const Vec3 ym = sphere_exp(b, xe, -0.05 * Vec3{0, 0, 1});
    const SingularKernelTerms tp = kernel_singular(b, xe, yp, fe, F);
    const SingularKernelTerms tm = kernel_singular(b, xe, ym, fe, F);
    CHECK(tp.drift_directional == doctest::Approx(-tm.drift_directional).epsilon(1e-12));
    CHECK(std::abs(tp.drift_directional) > 1e-3);
    const SingularKernelTerms t4 = kernel_singular(b, xe, yp, fe, F, SignConvention::Section4);
    CHECK(t4.drift_directional == doctest::Approx(-tp.drift_directional).epsilon(1e-12));
    CHECK(t4.log_term == doctest::Approx(tp.log_term).epsilon(1e-15));
  }

  SUBCASE("degenerate evaluations are rejected") {
    CHECK_THROWS_AS(kernel_singular(b, x, x, f, Vec3{0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(kernel_singular(b, x, -1.0 * x, f, Vec3{0, 0, 0}), std::domain_error);
  }
}

TEST_CASE("regular part by diagonal extrapolation") {
  const DomainModel b = unit_ball(1.0);
  const Vec3 xstar{0, 0, 1};
  const RegularPartFit fit = ball_regular_part_fit(b, xstar, 0.0);
  CHECK(fit.observed_order > 0.9);
  // Closed-form limit on the unit sphere: the subtracted kernel tends to
  // (log 2 - 2) / (4 pi).
  const double expected = (std::log(2.0) - 2.0) / (4.0 * kPi);
  CHECK(fit.value == doctest::Approx(expected).epsilon(1e-4));

  // Direction independence.
  const double v0 = fit.value;
  for (double ang : {0.7, 1.9, 3.6}) {
    CHECK(std::abs(ball_regular_part_fit(b, xstar, ang).value - v0) < 1e-3);
  }

  // The provider exposes the same number.
  const GreenProvider p = ball_green_provider(b);
  CHECK(regular_part(p, xstar) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("user-supplied provider file") {
  const DomainModel b = unit_ball(1.0);
  const std::string path = "test_green_provider.txt";
  {
    std::ofstream out(path);
    out << "# test provider\n";
    out << "R 0 0 1 -0.104\n";
    out << "SG 0 0 0 0.1666\n";
    out << "ISG 0.2793\n";
  }
  const GreenProvider p = user_green_provider(b, path);
  CHECK(p.provenance == GreenProvider::Provenance::UserSupplied);
  CHECK(regular_part(p, Vec3{0, 0, 1}) == doctest::Approx(-0.104));
  CHECK(regular_part(p, Vec3{0.001, 0, 0.999}) == doctest::Approx(-0.104));  // nearest
  CHECK(p.script_G(Vec3{0, 0, 0}) == doctest::Approx(0.1666));
  CHECK(p.script_G_volume_integral() == doctest::Approx(0.2793));
  CHECK_FALSE(static_cast<bool>(p.interior_green));
  CHECK_FALSE(static_cast<bool>(p.green_volume_integral));
  std::remove(path.c_str());

  GreenProvider empty;
  empty.regular_part_at = nullptr;
  CHECK_THROWS_AS(regular_part(empty, Vec3{0, 0, 1}), NotConfigured);
  CHECK_THROWS_AS(user_green_provider(b, "does_not_exist.txt"), NotConfigured);
}

}  // TEST_SUITE
