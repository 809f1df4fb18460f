#pragma once

#include <functional>
#include <vector>

namespace nek {

// Polar tensor quadrature on the unit disk. The edge-weighted variant
// absorbs the weight (1-r^2)^{-1/2} exactly through the substitution
// r = sin(phi), under which
//   int_0^1 g(r) r (1-r^2)^{-1/2} dr = int_0^{pi/2} g(sin phi) sin(phi) dphi,
// with Gauss-Legendre in phi (nodes cluster at the rim like a Chebyshev
// rule) and an equispaced offset grid in azimuth. The azimuthal grid is
// symmetric under s -> -s, so odd moments vanish by construction.
struct DiskRule {
  int n_radial = 0;
  int n_azimuthal = 0;
  bool edge_weighted = false;
  std::vector<double> x, y, w;  // flattened nodes and weights
  int size() const { return static_cast<int>(w.size()); }
};

DiskRule disk_rule_edge_weighted(int n_radial, int n_azimuthal);
DiskRule disk_rule_plain(int n_radial, int n_azimuthal);

// Density on the unit disk. When carries_edge_singularity is set, `values`
// hold only the smooth factor m and the (1-|s|^2)^{-1/2} weight is folded
// into the node weights, so integrals remain plain dot products. The
// evaluator returns the smooth factor at arbitrary points; it is what the
// singular-operator quadrature consumes.
struct DiskDensity {
  DiskRule rule;
  std::vector<double> values;
  bool carries_edge_singularity = false;
  std::function<double(double, double)> smooth_factor;
  bool is_constant = false;
  double constant_value = 0.0;

  static DiskDensity from_function(std::function<double(double, double)> m, bool edge,
                                   int n_radial = 48, int n_azimuthal = 96);
  static DiskDensity from_constant(double m, bool edge, int n_radial = 48,
                                   int n_azimuthal = 96);

  double integrate() const;
  double moment_t1() const;
  double moment_t2() const;
};

}  // namespace nek
