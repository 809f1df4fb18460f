#pragma once

#include <array>
#include <functional>
#include <string>

#include "nek/geometry.hpp"
#include "nek/vec3.hpp"

namespace nek {

// Two published sign conventions for the boundary kernel and the
// matching expansion coefficients:
//   Theorem:  drift term -<F_par, u>/(4 pi); expansion coefficient
//             (H + dphi/dnu) on the log terms.
//   Section4: drift term +<F_par, u>/(4 pi); expansion coefficient
//             (H - dphi/dnu).
// The log coefficient of the kernel itself is -(H + dphi/dnu)/(4 pi)
// either way. The drift term integrates to zero in the window constant
// (the RF-vanishing identity), so the default only matters for pointwise
// kernel evaluation; with phi = 0 the two conventions coincide.
enum class SignConvention { Theorem, Section4 };

// The four singular terms of the boundary-restricted Neumann Green kernel
// near the diagonal, evaluated with closed-form sphere distances:
//   coulomb            1 / (2 pi d_g(x,y))
//   log_term           -(H(x) + dphi/dnu(x)) log(d_h(y,x)) / (4 pi)
//   ii_difference      (II(u) - II(*u)) / (16 pi),  u = unit log_x(y)
//   drift_directional  -/+ <F_par(x), u> / (4 pi)   (sign per convention)
struct SingularKernelTerms {
  double coulomb = 0.0;
  double log_term = 0.0;
  double ii_difference = 0.0;
  double drift_directional = 0.0;
  double total_singular = 0.0;
};

SingularKernelTerms kernel_singular(const DomainModel& domain, Vec3 x, Vec3 y,
                                    const BoundaryFrame& frame, Vec3 F,
                                    SignConvention sign = SignConvention::Theorem);

// Provider for the global Green data entering the O(1) constant: the
// regular part R(x*,x*), the interior kernel G(x*,.), the volume potential
// script_G, and the two volume integrals the averaged value needs.
struct GreenProvider {
  enum class Provenance { ClosedFormBallNoDrift, UserSupplied };
  Provenance provenance = Provenance::ClosedFormBallNoDrift;
  std::function<double(Vec3)> regular_part_at;
  std::function<double(Vec3, Vec3)> interior_green;   // (x*, x) -> G(x*, x)
  std::function<double(Vec3)> script_G;
  std::function<double()> script_G_volume_integral;
  std::function<double(Vec3)> green_volume_integral;  // x* -> int_M G(., x*)
};

double regular_part(const GreenProvider& provider, Vec3 xstar);

// Closed forms for the zero-drift ball. G solves (in the second argument)
//   Lap G(x,.) = -delta_x,  dG/dnu = -1/|bdy|,  zero boundary mean,
// and is symmetric; script_G solves Lap g = -1, dg/dnu = -|M|/|bdy| with
// zero boundary mean, i.e. (R^2 - |x|^2)/6.
double ball_interior_green(const DomainModel& d, Vec3 x, Vec3 z);
double ball_script_G(const DomainModel& d, Vec3 x);

GreenProvider ball_green_provider(const DomainModel& d);

// Diagonal regular part by directional extrapolation at three dyadic
// distances d_h = R * {1e-2, 5e-3, 2.5e-3}; the regular part is only
// Hoelder below Lipschitz, so the fit also reports the observed order.
struct RegularPartFit {
  double value = 0.0;
  double observed_order = 0.0;
  std::array<double, 3> samples{};
};
RegularPartFit ball_regular_part_fit(const DomainModel& d, Vec3 xstar, double direction_angle);

// File-backed provider; see README for the record schema (R / G / SG /
// IG / ISG lines). Lookups are nearest-neighbor. Accessors whose record
// type is absent from the file stay unset and raise NotConfigured on use.
GreenProvider user_green_provider(const DomainModel& d, const std::string& path);

}  // namespace nek
