#pragma once

#include "nek/disk_density.hpp"

namespace nek {

// Integral operators on the unit disk D with the anisotropic distance
//   rho_a(t, s) = ((t1-s1)^2 + a^2 (t2-s2)^2)^(1/2),      0 < a <= 1:
//
//   L_a f(t)     = a * int_D f(s) / rho_a(t,s) ds            (weakly singular)
//   Rlog_a f(t)  = a * int_D log(rho_a(t,s)) f(s) ds
//   Rinf_a f(t)  = a * int_D [(d1^2 - a^2 d2^2)/(d1^2 + a^2 d2^2)] f(s) ds
//   RF_a f(t)    = a * int_D [(F1 d1 + a F2 d2)/rho_a] f(s) ds,  d = t - s.
//
// L_a has the closed-form equilibrium density K_a^{-1} (1-|t|^2)^{-1/2}
// with L_a applied to it identically one; K_a is the elliptic normalizer
// below. The singular quadrature works in kernel-adapted polar coordinates
// s = t + r*(cos th, sin th / a): the Jacobian r/a cancels the 1/rho_a
// singularity analytically (the closed-form radial kernel integral of the
// subtraction scheme, taken per ray), the Rinf and RF kernels collapse to
// cos(2 th) and -(F1 cos th + F2 sin th), and the remaining radial factor
// is integrated by a tanh-sinh rule that absorbs the (1-|s|^2)^{-1/2} edge
// weight of the densities.

// K_a = (pi/2) * int_0^{2pi} (cos^2 th + sin^2 th / a^2)^{-1/2} dth,
// evaluated by doubling trapezoid sums to 1e-12 absolute. K_1 = pi^2.
struct EllipticConstant {
  double a = 1.0;
  double value = 0.0;
};
EllipticConstant elliptic_Ka(double a);

// The equilibrium density K_a^{-1} (1-|t|^2)^{-1/2}; stored smooth factor
// is the constant K_a^{-1}, the edge weight lives in the node weights.
// Its integral is 2*pi/K_a and its first moments vanish.
DiskDensity equilibrium_density(double a, int n_radial = 48, int n_azimuthal = 96);

// Quadrature order for the singular applications: rays in the angular
// direction, a tanh-sinh level along each ray.
struct RayOrder {
  int n_theta = 64;
  int ts_level = 4;
  RayOrder doubled() const { return RayOrder{2 * n_theta, ts_level + 1}; }
};

double apply_La(const DiskDensity& f, double t1, double t2, double a,
                RayOrder order = RayOrder{});
double apply_Rlog(const DiskDensity& f, double t1, double t2, double a,
                  RayOrder order = RayOrder{});
double apply_Rinfty(const DiskDensity& f, double t1, double t2, double a,
                    RayOrder order = RayOrder{});
double apply_RF(const DiskDensity& f, double t1, double t2, double a, double F1, double F2,
                RayOrder order = RayOrder{});

// The two D x D integrals entering the ellipse constant:
//   Ilog(a)   = int_D W(s) int_D log(rho_a(t,s)) W(t) dt ds
//   Ianiso(a) = int_D W(s) int_D [(d1^2 - a^2 d2^2)/(d1^2+a^2 d2^2)] W(t) dt ds
// with W(t) = (1-|t|^2)^{-1/2}. Ianiso(1) = 0 by the (t1,s1)<->(t2,s2)
// swap symmetry; Ilog(1) = 4 pi^2 (2 log 2 - 3/2).
struct DoubleIntegralOrder {
  int outer_radial = 96;
  int outer_azimuthal = 144;
  RayOrder inner{128, 4};
  DoubleIntegralOrder doubled() const {
    return DoubleIntegralOrder{2 * outer_radial, 2 * outer_azimuthal, inner.doubled()};
  }
};
double integral_Ilog(double a, DoubleIntegralOrder order = DoubleIntegralOrder{},
                     int n_threads = 1);
double integral_Ianiso(double a, DoubleIntegralOrder order = DoubleIntegralOrder{},
                       int n_threads = 1);

// Residual of int_D Linv_a RF_a Linv_a 1 ds, which vanishes identically.
// Linv_a is self-adjoint and Linv_a 1 = K_a^{-1} W, so the triple
// composition reduces to K_a^{-2} <W, RF_a W> and no general inverse of
// L_a is needed.
double check_RF_vanishing(double a, double F1, double F2,
                          DoubleIntegralOrder order = DoubleIntegralOrder{},
                          int n_threads = 1);

namespace detail {
// Pointwise kernels in the (t - s) convention, exposed for tests.
double La_kernel(double t1, double t2, double s1, double s2, double a);
double Rlog_kernel(double t1, double t2, double s1, double s2, double a);
double Rinfty_kernel(double t1, double t2, double s1, double s2, double a);
double RF_kernel(double t1, double t2, double s1, double s2, double a, double F1, double F2);
}  // namespace detail

}  // namespace nek
