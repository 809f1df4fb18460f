#pragma once

#include <string>

#include "nek/disk_operators.hpp"
#include "nek/geometry.hpp"
#include "nek/green.hpp"
#include "nek/potential.hpp"

namespace nek {

// Structured asymptotic escape-time constant
//   C = leading + log_term + constant_term + O(eps log eps),
// with the window on the boundary of the domain. For the geodesic disk
// (a = 1):
//   leading       = Phi(x*) / (4 eps)
//   log_term      = -kappa Phi(x*) log(eps) / (4 pi)
//   constant_term = R(x*,x*) Phi(x*) - scriptG(x*)
//                   - kappa Phi(x*) (2 log 2 - 3/2) / (4 pi)
// and for the geodesic ellipse (0 < a <= 1):
//   leading       = K_a Phi(x*) / (4 pi^2 a eps)
//   constant_term = R(x*,x*) Phi(x*) - scriptG(x*)
//                   - kappa Phi(x*) Ilog(a) / (16 pi^3)
//                   + (lambda1 - lambda2) Phi(x*) Ianiso(a) / (64 pi^3),
// where kappa = H + dphi/dnu under SignConvention::Theorem and
// H - dphi/dnu under SignConvention::Section4.
struct NETExpansion {
  double leading = 0.0;
  double log_term = 0.0;
  double constant_term = 0.0;
  double total = 0.0;
  std::string error_order = "O(eps log eps)";
  struct Inputs {
    double eps = 0.0, a = 1.0;
    double Phi = 0.0;
    double H = 0.0, dnu_phi = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0;
    double Ka = 0.0;
    double R_star = 0.0;
    double script_G_star = 0.0;
  } inputs;
};

// Precomputed disk integrals for the ellipse constant; letting callers
// reuse them avoids recomputing the nested quadrature per eps.
struct EllipseIntegrals {
  double a = 1.0;
  double Ka = 0.0;
  double Ilog = 0.0;
  double Ianiso = 0.0;
};
EllipseIntegrals compute_ellipse_integrals(double a, DoubleIntegralOrder order = {},
                                           int n_threads = 1);

NETExpansion net_constant_disk(const DomainModel& domain, const PotentialField& phi,
                               const WindowSpec& window, const GreenProvider& provider,
                               SignConvention sign = SignConvention::Theorem,
                               double phi_tol = 1e-9);

NETExpansion net_constant_ellipse(const DomainModel& domain, const PotentialField& phi,
                                  const WindowSpec& window, const GreenProvider& provider,
                                  SignConvention sign = SignConvention::Theorem,
                                  double phi_tol = 1e-9,
                                  const EllipseIntegrals* precomputed = nullptr,
                                  int n_threads = 1);

// Pointwise field u(x) = C + scriptG(x) - Phi(x*) G(x*, x), valid away
// from the window (the dropped remainder is O(eps) there).
struct SojournField {
  DomainModel domain;
  NETExpansion base_expansion;
  GreenProvider provider;
  WindowSpec window;
};

double sojourn_field(const SojournField& field, Vec3 x);

// Domain average (C |M| + int scriptG - Phi int G) / |M|.
double averaged_sojourn(const SojournField& field);

}  // namespace nek
