#include "nek/disk_density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "nek/quadrature.hpp"

namespace nek {

namespace {

DiskRule make_rule(int n_radial, int n_azimuthal, bool edge) {
  if (n_radial < 2 || n_azimuthal < 4)
    throw std::invalid_argument("disk_rule: order too small");
  DiskRule rule;
  rule.n_radial = n_radial;
  rule.n_azimuthal = n_azimuthal;
  rule.edge_weighted = edge;
  const GaussLegendre& gl = gauss_legendre(n_radial);
  std::vector<double> r(n_radial), wr(n_radial);
  if (edge) {
    for (int i = 0; i < n_radial; ++i) {
      const double phi = 0.25 * std::numbers::pi * (gl.nodes[i] + 1.0);
      r[i] = std::sin(phi);
      wr[i] = 0.25 * std::numbers::pi * gl.weights[i] * std::sin(phi);
    }
  } else {
    for (int i = 0; i < n_radial; ++i) {
      r[i] = 0.5 * (gl.nodes[i] + 1.0);
      wr[i] = 0.5 * gl.weights[i] * r[i];
    }
  }
  const double waz = 2.0 * std::numbers::pi / n_azimuthal;
  rule.x.reserve(static_cast<std::size_t>(n_radial) * n_azimuthal);
  rule.y.reserve(rule.x.capacity());
  rule.w.reserve(rule.x.capacity());
  for (int k = 0; k < n_azimuthal; ++k) {
    const double th = 2.0 * std::numbers::pi * (k + 0.5) / n_azimuthal;
    const double ct = std::cos(th), st = std::sin(th);
    for (int i = 0; i < n_radial; ++i) {
      rule.x.push_back(r[i] * ct);
      rule.y.push_back(r[i] * st);
      rule.w.push_back(wr[i] * waz);
    }
  }
  return rule;
}

}  // namespace

DiskRule disk_rule_edge_weighted(int n_radial, int n_azimuthal) {
  return make_rule(n_radial, n_azimuthal, true);
}

DiskRule disk_rule_plain(int n_radial, int n_azimuthal) {
  return make_rule(n_radial, n_azimuthal, false);
}

DiskDensity DiskDensity::from_function(std::function<double(double, double)> m, bool edge,
                                       int n_radial, int n_azimuthal) {
  DiskDensity d;
  d.rule = edge ? disk_rule_edge_weighted(n_radial, n_azimuthal)
                : disk_rule_plain(n_radial, n_azimuthal);
  d.carries_edge_singularity = edge;
  d.values.resize(d.rule.size());
  for (int j = 0; j < d.rule.size(); ++j) d.values[j] = m(d.rule.x[j], d.rule.y[j]);
  d.smooth_factor = std::move(m);
  return d;
}

DiskDensity DiskDensity::from_constant(double m, bool edge, int n_radial, int n_azimuthal) {
  DiskDensity d = from_function([m](double, double) { return m; }, edge, n_radial, n_azimuthal);
  d.is_constant = true;
  d.constant_value = m;
  return d;
}

double DiskDensity::integrate() const {
  std::vector<double> terms(rule.size());
  for (int j = 0; j < rule.size(); ++j) terms[j] = rule.w[j] * values[j];
  return pairwise_sum(terms);
}

double DiskDensity::moment_t1() const {
  std::vector<double> terms(rule.size());
  for (int j = 0; j < rule.size(); ++j) terms[j] = rule.w[j] * values[j] * rule.x[j];
  return pairwise_sum(terms);
}

double DiskDensity::moment_t2() const {
  std::vector<double> terms(rule.size());
  for (int j = 0; j < rule.size(); ++j) terms[j] = rule.w[j] * values[j] * rule.y[j];
  return pairwise_sum(terms);
}

}  // namespace nek
