#include <cmath>

#include "nek/simd.hpp"

namespace nek::simd {

// Reference implementation. The vector variants must agree with this one
// to near machine precision on every input (see tests/test_simd.cpp).
double ray_sum_scalar(const TanhSinhRule& nodes, const RayParams& p) {
  const int n = nodes.size();
  const double halfL = 0.5 * p.L;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double r = halfL * (1.0 + nodes.u[k]);
    const double lmr = halfL * nodes.om[k];  // L - r
    const double w2 = p.A * lmr * (r - p.Lneg);
    double fac;
    switch (p.kind) {
      case 1: fac = p.c * r; break;
      case 2: fac = r * (p.logL + nodes.lg[k]); break;
      default: fac = 1.0; break;
    }
    acc += nodes.w[k] * fac / std::sqrt(w2);
  }
  return acc;
}

}  // namespace nek::simd
