#include "nek/disk_operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nek/quadrature.hpp"
#include "nek/simd.hpp"

namespace nek {

namespace {

enum class Op { La, Rlog, Rinfty, RF };

struct RayGeometry {
  double L;     // positive root of |t + r w(th)|^2 = 1 in r
  double Lneg;  // negative root
  double A;     // |w(th)|^2
  double wx, wy;
};

// Roots of A r^2 + 2 B r + C = 0 with C = |t|^2 - 1 <= 0, so the
// discriminant B^2 - A C is nonnegative for every t in the closed disk.
inline RayGeometry ray_geometry(double t1, double t2, double a, double cth, double sth) {
  RayGeometry g;
  g.wx = cth;
  g.wy = sth / a;
  g.A = g.wx * g.wx + g.wy * g.wy;
  const double B = t1 * g.wx + t2 * g.wy;
  const double C = t1 * t1 + t2 * t2 - 1.0;
  const double sd = std::sqrt(B * B - g.A * C);
  g.L = (-B + sd) / g.A;
  g.Lneg = (-B - sd) / g.A;
  return g;
}

// Generic (arbitrary smooth factor) ray integral, scalar. The constant
// smooth factor + edge weight case goes through the dispatched SIMD
// kernels instead.
double ray_integral_generic(const DiskDensity& f, double t1, double t2, const RayGeometry& g,
                            int kind, double c, double logL, const TanhSinhRule& nodes) {
  const double halfL = 0.5 * g.L;
  KahanSum acc;
  for (int k = 0; k < nodes.size(); ++k) {
    const double r = halfL * (1.0 + nodes.u[k]);
    const double s1 = t1 + r * g.wx;
    const double s2 = t2 + r * g.wy;
    double m = f.smooth_factor(s1, s2);
    if (f.carries_edge_singularity) {
      const double lmr = halfL * nodes.om[k];
      m /= std::sqrt(g.A * lmr * (r - g.Lneg));
    }
    double fac;
    switch (kind) {
      case 1: fac = c * r; break;
      case 2: fac = r * (logL + nodes.lg[k]); break;
      default: fac = 1.0; break;
    }
    acc.add(nodes.w[k] * fac * m);
  }
  return acc.value();
}

double apply_kernel(const DiskDensity& f, double t1, double t2, double a, Op op, double F1,
                    double F2, RayOrder order) {
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("disk operator: a must be in (0, 1]");
  const double tt = t1 * t1 + t2 * t2;
  const bool open_disk = op == Op::La;  // L_a needs t strictly inside
  if (open_disk ? (tt >= 1.0) : (tt > 1.0 + 1e-14))
    throw std::domain_error("disk operator: evaluation point outside the disk");
  if (!f.smooth_factor) throw std::invalid_argument("disk operator: density has no evaluator");

  const TanhSinhRule& nodes = tanh_sinh(order.ts_level);
  const bool fast = f.is_constant && f.carries_edge_singularity;
  std::vector<double> ray(order.n_theta);
  for (int j = 0; j < order.n_theta; ++j) {
    const double th = 2.0 * std::numbers::pi * (j + 0.5) / order.n_theta;
    const double cth = std::cos(th), sth = std::sin(th);
    const RayGeometry g = ray_geometry(t1, t2, a, cth, sth);
    if (!(g.L > 0.0)) {
      ray[j] = 0.0;
      continue;
    }
    // In the adapted coordinates the kernels reduce to radial factors:
    // 1 for L_a, r log r for Rlog, r cos(2 th) for Rinfty and
    // -r (F1 cos th + F2 sin th) for RF (d = t - s = -r w).
    int kind = 0;
    double c = 0.0, logL = 0.0;
    switch (op) {
      case Op::La: kind = 0; break;
      case Op::Rlog: kind = 2; logL = std::log(g.L); break;
      case Op::Rinfty: kind = 1; c = std::cos(2.0 * th); break;
      case Op::RF: kind = 1; c = -(F1 * cth + F2 * sth); break;
    }
    double sum;
    if (fast) {
      simd::RayParams p;
      p.L = g.L;
      p.Lneg = g.Lneg;
      p.A = g.A;
      p.kind = kind;
      p.c = c;
      p.logL = logL;
      sum = f.constant_value * simd::ray_sum(nodes, p);
    } else {
      sum = ray_integral_generic(f, t1, t2, g, kind, c, logL, nodes);
    }
    ray[j] = 0.5 * g.L * sum;
  }
  return (2.0 * std::numbers::pi / order.n_theta) * pairwise_sum(ray);
}

}  // namespace

EllipticConstant elliptic_Ka(double a) {
  // Overflow guard: below 1e-4 the integrand's complex poles sit too close
  // to the real axis for the doubling trapezoid budget to reach 1e-12.
  if (!(a >= 1e-4 && a <= 1.0))
    throw std::invalid_argument("elliptic_Ka: a must be in [1e-4, 1]");
  auto trapezoid = [&](int n) {
    KahanSum s;
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * std::numbers::pi * (k + 0.5) / n;
      const double c = std::cos(th), si = std::sin(th);
      s.add(1.0 / std::sqrt(c * c + si * si / (a * a)));
    }
    return std::numbers::pi / 2.0 * (2.0 * std::numbers::pi / n) * s.value();
  };
  int n = 32;
  double prev = trapezoid(n);
  for (; n <= (1 << 21); n *= 2) {
    const double cur = trapezoid(2 * n);
    if (std::abs(cur - prev) < 1e-13) return EllipticConstant{a, cur};
    prev = cur;
  }
  return EllipticConstant{a, prev};
}

DiskDensity equilibrium_density(double a, int n_radial, int n_azimuthal) {
  const EllipticConstant K = elliptic_Ka(a);
  return DiskDensity::from_constant(1.0 / K.value, /*edge=*/true, n_radial, n_azimuthal);
}

double apply_La(const DiskDensity& f, double t1, double t2, double a, RayOrder order) {
  return apply_kernel(f, t1, t2, a, Op::La, 0.0, 0.0, order);
}

double apply_Rlog(const DiskDensity& f, double t1, double t2, double a, RayOrder order) {
  return apply_kernel(f, t1, t2, a, Op::Rlog, 0.0, 0.0, order);
}

double apply_Rinfty(const DiskDensity& f, double t1, double t2, double a, RayOrder order) {
  return apply_kernel(f, t1, t2, a, Op::Rinfty, 0.0, 0.0, order);
}

double apply_RF(const DiskDensity& f, double t1, double t2, double a, double F1, double F2,
                RayOrder order) {
  if (F1 == 0.0 && F2 == 0.0) return 0.0;
  return apply_kernel(f, t1, t2, a, Op::RF, F1, F2, order);
}

namespace {

// Outer integral over the edge-weighted disk rule of g(s) = apply_X(W, s),
// with W the pure edge density (smooth factor one). Each of the D x D
// integrals and the RF residual is of this shape.
template <typename ApplyFn>
double outer_edge_integral(DoubleIntegralOrder order, int n_threads, ApplyFn&& apply) {
  const DiskRule rule = disk_rule_edge_weighted(order.outer_radial, order.outer_azimuthal);
  const DiskDensity W = DiskDensity::from_constant(1.0, /*edge=*/true, 8, 8);
  std::vector<double> terms(rule.size());
  parallel_for(rule.size(), n_threads,
               [&](std::size_t j) { terms[j] = rule.w[j] * apply(W, rule.x[j], rule.y[j]); });
  return pairwise_sum(terms);
}

}  // namespace

double integral_Ilog(double a, DoubleIntegralOrder order, int n_threads) {
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("integral_Ilog: a must be in (0, 1]");
  const double bilinear = outer_edge_integral(order, n_threads,
      [&](const DiskDensity& W, double x, double y) { return apply_Rlog(W, x, y, a, order.inner); });
  return bilinear / a;
}

double integral_Ianiso(double a, DoubleIntegralOrder order, int n_threads) {
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("integral_Ianiso: a must be in (0, 1]");
  const double bilinear = outer_edge_integral(order, n_threads,
      [&](const DiskDensity& W, double x, double y) { return apply_Rinfty(W, x, y, a, order.inner); });
  return bilinear / a;
}

double check_RF_vanishing(double a, double F1, double F2, DoubleIntegralOrder order,
                          int n_threads) {
  if (F1 == 0.0 && F2 == 0.0) return 0.0;
  const EllipticConstant K = elliptic_Ka(a);
  const double bilinear = outer_edge_integral(order, n_threads,
      [&](const DiskDensity& W, double x, double y) {
        return apply_RF(W, x, y, a, F1, F2, order.inner);
      });
  return bilinear / (K.value * K.value);
}

namespace detail {

double La_kernel(double t1, double t2, double s1, double s2, double a) {
  const double d1 = t1 - s1, d2 = t2 - s2;
  return a / std::sqrt(d1 * d1 + a * a * d2 * d2);
}

double Rlog_kernel(double t1, double t2, double s1, double s2, double a) {
  const double d1 = t1 - s1, d2 = t2 - s2;
  return a * 0.5 * std::log(d1 * d1 + a * a * d2 * d2);
}

double Rinfty_kernel(double t1, double t2, double s1, double s2, double a) {
  const double d1 = t1 - s1, d2 = t2 - s2;
  return a * (d1 * d1 - a * a * d2 * d2) / (d1 * d1 + a * a * d2 * d2);
}

double RF_kernel(double t1, double t2, double s1, double s2, double a, double F1, double F2) {
  const double d1 = t1 - s1, d2 = t2 - s2;
  return a * (F1 * d1 + a * F2 * d2) / std::sqrt(d1 * d1 + a * a * d2 * d2);
}

}  // namespace detail

}  // namespace nek
