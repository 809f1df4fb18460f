#include "nek/green.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nek/error.hpp"

namespace nek {

namespace {

constexpr double kPi = std::numbers::pi;

double require_boundary_distance(const DomainModel& d, Vec3 x, Vec3 y) {
  const double dh = geodesic_distance(d, x, y);
  if (dh <= 0.0) throw std::domain_error("kernel_singular: singular evaluation at x = y");
  if (dh >= 0.9 * kPi * d.radius)
    throw std::domain_error("kernel_singular: points too close to antipodal for the chart");
  return dh;
}

}  // namespace

SingularKernelTerms kernel_singular(const DomainModel& domain, Vec3 x, Vec3 y,
                                    const BoundaryFrame& frame, Vec3 F, SignConvention sign) {
  const double dh = require_boundary_distance(domain, x, y);
  const double dg = chord_distance(x, y);

  const Vec3 v = sphere_log(domain, x, y);
  const Vec3 u = normalized(v);
  const double c1 = dot(u, frame.e1);
  const double c2 = dot(u, frame.e2);

  const double dnu_phi = dot(F, frame.nu);
  const Vec3 F_par = F - dnu_phi * frame.nu;

  SingularKernelTerms terms;
  terms.coulomb = 1.0 / (2.0 * kPi * dg);
  terms.log_term = -(frame.mean_curvature + dnu_phi) / (4.0 * kPi) * std::log(dh);
  // The pi/2 rotation of u has frame components (-c2, c1), so
  // II(u) - II(*u) factors as (lambda1 - lambda2)(c1^2 - c2^2); on an
  // umbilic boundary this is exactly zero.
  terms.ii_difference = (frame.lambda1 - frame.lambda2) * (c1 * c1 - c2 * c2) / (16.0 * kPi);
  const double drift_sign = sign == SignConvention::Theorem ? -1.0 : 1.0;
  terms.drift_directional = drift_sign * dot(F_par, u) / (4.0 * kPi);
  terms.total_singular =
      terms.coulomb + terms.log_term + terms.ii_difference + terms.drift_directional;
  return terms;
}

double regular_part(const GreenProvider& provider, Vec3 xstar) {
  if (!provider.regular_part_at)
    throw NotConfigured("regular_part: provider has no regular-part data");
  return provider.regular_part_at(xstar);
}

double ball_interior_green(const DomainModel& d, Vec3 x, Vec3 z) {
  const double R = d.radius;
  const Vec3 u = x / R;
  const Vec3 v = z / R;
  const double uv = dot(u, v);
  const double duv = norm(u - v);
  if (duv == 0.0) throw std::domain_error("ball_interior_green: singular evaluation at x = z");
  // s = |v| |u - v/|v|^2| is symmetric and stays finite as v -> 0.
  const double s = std::sqrt(std::max(1.0 - 2.0 * uv + norm2(u) * norm2(v), 0.0));
  const double g1 = 1.0 / (4.0 * kPi * duv) + 1.0 / (4.0 * kPi * s) +
                    std::log(2.0 / (1.0 - uv + s)) / (4.0 * kPi) - 1.0 / (2.0 * kPi);
  return g1 / R;
}

double ball_script_G(const DomainModel& d, Vec3 x) {
  if (norm(x) > d.radius * (1.0 + 1e-10))
    throw std::domain_error("ball_script_G: point outside the closed ball");
  return (d.radius * d.radius - norm2(x)) / 6.0;
}

RegularPartFit ball_regular_part_fit(const DomainModel& d, Vec3 xstar, double direction_angle) {
  const BoundaryFrame frame = boundary_frame(d, xstar);
  const Vec3 dir = std::cos(direction_angle) * frame.e1 + std::sin(direction_angle) * frame.e2;
  RegularPartFit fit;
  const std::array<double, 3> dists = {1e-2 * d.radius, 5e-3 * d.radius, 2.5e-3 * d.radius};
  for (int i = 0; i < 3; ++i) {
    const Vec3 y = sphere_exp(d, xstar, dists[i] * dir);
    const SingularKernelTerms sing =
        kernel_singular(d, xstar, y, frame, Vec3{0, 0, 0}, SignConvention::Theorem);
    fit.samples[i] = ball_interior_green(d, xstar, y) - sing.total_singular;
  }
  const double d01 = fit.samples[0] - fit.samples[1];
  const double d12 = fit.samples[1] - fit.samples[2];
  if (d12 != 0.0 && d01 / d12 > 0.0) {
    // v(d) ~ v_inf + C d^p  =>  v_inf = v(D/4) - (v(D/2) - v(D/4)) / (2^p - 1).
    fit.observed_order = std::log2(d01 / d12);
    fit.value = fit.samples[2] - d12 / (std::exp2(fit.observed_order) - 1.0);
  } else {
    // Differences below roundoff: the samples already sit on the limit.
    fit.observed_order = std::numeric_limits<double>::infinity();
    fit.value = fit.samples[2];
  }
  return fit;
}

GreenProvider ball_green_provider(const DomainModel& d) {
  GreenProvider p;
  p.provenance = GreenProvider::Provenance::ClosedFormBallNoDrift;
  p.regular_part_at = [d](Vec3 xstar) { return ball_regular_part_fit(d, xstar, 0.0).value; };
  p.interior_green = [d](Vec3 xstar, Vec3 x) { return ball_interior_green(d, xstar, x); };
  p.script_G = [d](Vec3 x) { return ball_script_G(d, x); };
  p.script_G_volume_integral = [d]() {
    const double R = d.radius;
    return 4.0 * kPi * R * R * R * R * R / 45.0;
  };
  // int_M G(x, x*) dx vanishes on the ball for boundary x*: the Coulomb
  // piece contributes |M|/(2 pi R) * ... exactly cancelled by the log and
  // constant pieces (checked numerically in the tests).
  p.green_volume_integral = [](Vec3) { return 0.0; };
  return p;
}

GreenProvider user_green_provider(const DomainModel& d, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotConfigured("user_green_provider: cannot open " + path);

  struct Sample1 { Vec3 p; double v; };
  struct Sample2 { Vec3 p, q; double v; };
  auto r_samples = std::make_shared<std::vector<Sample1>>();
  auto g_samples = std::make_shared<std::vector<Sample2>>();
  auto sg_samples = std::make_shared<std::vector<Sample1>>();
  auto ig_samples = std::make_shared<std::vector<Sample1>>();
  double isg = 0.0;
  bool have_isg = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    auto fail = [&]() {
      throw std::runtime_error("user_green_provider: bad record at line " +
                               std::to_string(lineno));
    };
    if (tag == "R") {
      Sample1 s;
      if (!(ss >> s.p.x >> s.p.y >> s.p.z >> s.v)) fail();
      r_samples->push_back(s);
    } else if (tag == "G") {
      Sample2 s;
      if (!(ss >> s.p.x >> s.p.y >> s.p.z >> s.q.x >> s.q.y >> s.q.z >> s.v)) fail();
      g_samples->push_back(s);
    } else if (tag == "SG") {
      Sample1 s;
      if (!(ss >> s.p.x >> s.p.y >> s.p.z >> s.v)) fail();
      sg_samples->push_back(s);
    } else if (tag == "IG") {
      Sample1 s;
      if (!(ss >> s.p.x >> s.p.y >> s.p.z >> s.v)) fail();
      ig_samples->push_back(s);
    } else if (tag == "ISG") {
      if (!(ss >> isg)) fail();
      have_isg = true;
    } else {
      fail();
    }
  }

  auto nearest1 = [](const std::vector<Sample1>& xs, Vec3 p) {
    double best = std::numeric_limits<double>::infinity();
    double v = 0.0;
    for (const auto& s : xs) {
      const double dd = norm2(s.p - p);
      if (dd < best) { best = dd; v = s.v; }
    }
    return v;
  };

  GreenProvider p;
  p.provenance = GreenProvider::Provenance::UserSupplied;
  (void)d;
  if (!r_samples->empty())
    p.regular_part_at = [r_samples, nearest1](Vec3 x) { return nearest1(*r_samples, x); };
  if (!g_samples->empty())
    p.interior_green = [g_samples](Vec3 xstar, Vec3 x) {
      double best = std::numeric_limits<double>::infinity();
      double v = 0.0;
      for (const auto& s : *g_samples) {
        const double dd = norm2(s.p - xstar) + norm2(s.q - x);
        if (dd < best) { best = dd; v = s.v; }
      }
      return v;
    };
  if (!sg_samples->empty())
    p.script_G = [sg_samples, nearest1](Vec3 x) { return nearest1(*sg_samples, x); };
  if (!ig_samples->empty())
    p.green_volume_integral = [ig_samples, nearest1](Vec3 x) { return nearest1(*ig_samples, x); };
  if (have_isg) p.script_G_volume_integral = [isg]() { return isg; };
  return p;
}

}  // namespace nek
