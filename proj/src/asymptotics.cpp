#include "nek/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nek/error.hpp"

namespace nek {

namespace {

constexpr double kPi = std::numbers::pi;

struct CommonInputs {
  double Phi, H, dnu_phi, lambda1, lambda2, kappa, R_star, sG_star;
  Vec3 xstar;
};

CommonInputs gather_inputs(const DomainModel& domain, const PotentialField& phi,
                           const WindowSpec& window, const GreenProvider& provider,
                           SignConvention sign, double phi_tol) {
  CommonInputs in;
  in.xstar = window.frame.point;
  in.Phi = weighted_volume(domain, phi, in.xstar, phi_tol).value;
  in.H = window.frame.mean_curvature;
  in.dnu_phi = dot(force(phi, domain, in.xstar), window.frame.nu);
  in.lambda1 = window.frame.lambda1;
  in.lambda2 = window.frame.lambda2;
  in.kappa = sign == SignConvention::Theorem ? in.H + in.dnu_phi : in.H - in.dnu_phi;
  if (!provider.regular_part_at)
    throw NotConfigured("net_constant: provider has no regular-part data");
  if (!provider.script_G)
    throw NotConfigured("net_constant: provider has no script_G data");
  in.R_star = provider.regular_part_at(in.xstar);
  in.sG_star = provider.script_G(in.xstar);
  return in;
}

}  // namespace

EllipseIntegrals compute_ellipse_integrals(double a, DoubleIntegralOrder order, int n_threads) {
  EllipseIntegrals e;
  e.a = a;
  e.Ka = elliptic_Ka(a).value;
  e.Ilog = integral_Ilog(a, order, n_threads);
  e.Ianiso = integral_Ianiso(a, order, n_threads);
  return e;
}

NETExpansion net_constant_disk(const DomainModel& domain, const PotentialField& phi,
                               const WindowSpec& window, const GreenProvider& provider,
                               SignConvention sign, double phi_tol) {
  if (window.a != 1.0)
    throw std::invalid_argument("net_constant_disk: window must have a = 1 (use the ellipse variant)");
  const CommonInputs in = gather_inputs(domain, phi, window, provider, sign, phi_tol);
  const double eps = window.eps;

  NETExpansion out;
  out.leading = in.Phi / (4.0 * eps);
  out.log_term = -in.kappa * in.Phi / (4.0 * kPi) * std::log(eps);
  out.constant_term = in.R_star * in.Phi - in.sG_star -
                      in.kappa * in.Phi / (4.0 * kPi) * (2.0 * std::log(2.0) - 1.5);
  out.total = out.leading + out.log_term + out.constant_term;
  out.inputs = {eps, 1.0, in.Phi, in.H, in.dnu_phi, in.lambda1, in.lambda2,
                kPi * kPi, in.R_star, in.sG_star};
  return out;
}

NETExpansion net_constant_ellipse(const DomainModel& domain, const PotentialField& phi,
                                  const WindowSpec& window, const GreenProvider& provider,
                                  SignConvention sign, double phi_tol,
                                  const EllipseIntegrals* precomputed, int n_threads) {
  const double a = window.a;
  EllipseIntegrals local;
  if (precomputed != nullptr) {
    if (precomputed->a != a)
      throw std::invalid_argument("net_constant_ellipse: precomputed integrals are for another a");
    local = *precomputed;
  } else {
    local = compute_ellipse_integrals(a, DoubleIntegralOrder{}, n_threads);
  }
  const CommonInputs in = gather_inputs(domain, phi, window, provider, sign, phi_tol);
  const double eps = window.eps;

  NETExpansion out;
  out.leading = local.Ka * in.Phi / (4.0 * kPi * kPi * a * eps);
  out.log_term = -in.kappa * in.Phi / (4.0 * kPi) * std::log(eps);
  out.constant_term = in.R_star * in.Phi - in.sG_star -
                      in.kappa * in.Phi / (16.0 * kPi * kPi * kPi) * local.Ilog +
                      (in.lambda1 - in.lambda2) * in.Phi / (64.0 * kPi * kPi * kPi) * local.Ianiso;
  out.total = out.leading + out.log_term + out.constant_term;
  out.inputs = {eps, a, in.Phi, in.H, in.dnu_phi, in.lambda1, in.lambda2,
                local.Ka, in.R_star, in.sG_star};
  return out;
}

double sojourn_field(const SojournField& field, Vec3 x) {
  if (norm(x) > field.domain.radius * (1.0 + 1e-10))
    throw std::domain_error("sojourn_field: point outside the closed domain");
  const Vec3 xstar = field.window.frame.point;
  if (norm(x - xstar) < 10.0 * field.window.eps)
    throw OutOfValidity("sojourn_field: point within 10 eps of the window center");
  if (!field.provider.script_G || !field.provider.interior_green)
    throw NotConfigured("sojourn_field: provider lacks script_G or interior_green");
  const double C = field.base_expansion.total;
  const double sG = field.provider.script_G(x);
  const double G = field.provider.interior_green(xstar, x);
  return C + sG - field.base_expansion.inputs.Phi * G;
}

double averaged_sojourn(const SojournField& field) {
  if (!field.provider.script_G_volume_integral)
    throw NotConfigured("averaged_sojourn: provider lacks int script_G");
  if (!field.provider.green_volume_integral)
    throw NotConfigured("averaged_sojourn: provider lacks int G(., x*)");
  const double C = field.base_expansion.total;
  const double vol = field.domain.volume;
  const double int_sG = field.provider.script_G_volume_integral();
  const double int_G = field.provider.green_volume_integral(field.window.frame.point);
  return (C * vol + int_sG - field.base_expansion.inputs.Phi * int_G) / vol;
}

}  // namespace nek
