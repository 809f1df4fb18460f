#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

#include "nek/simd.hpp"

namespace nek::simd {

// NEON variant of ray_sum_scalar, 2 radial nodes per iteration.
double ray_sum_neon(const TanhSinhRule& nodes, const RayParams& p) {
  const int n = nodes.size();
  const float64x2_t halfL = vdupq_n_f64(0.5 * p.L);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t A = vdupq_n_f64(p.A);
  const float64x2_t Lneg = vdupq_n_f64(p.Lneg);
  const float64x2_t cc = vdupq_n_f64(p.c);
  const float64x2_t logL = vdupq_n_f64(p.logL);
  float64x2_t acc = vdupq_n_f64(0.0);

  int k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t u = vld1q_f64(&nodes.u[k]);
    const float64x2_t om = vld1q_f64(&nodes.om[k]);
    const float64x2_t w = vld1q_f64(&nodes.w[k]);
    const float64x2_t r = vmulq_f64(halfL, vaddq_f64(one, u));
    const float64x2_t lmr = vmulq_f64(halfL, om);
    const float64x2_t w2 = vmulq_f64(A, vmulq_f64(lmr, vsubq_f64(r, Lneg)));
    float64x2_t fac;
    if (p.kind == 1) {
      fac = vmulq_f64(cc, r);
    } else if (p.kind == 2) {
      const float64x2_t lg = vld1q_f64(&nodes.lg[k]);
      fac = vmulq_f64(r, vaddq_f64(logL, lg));
    } else {
      fac = one;
    }
    const float64x2_t inv = vdivq_f64(one, vsqrtq_f64(w2));
    acc = vfmaq_f64(acc, vmulq_f64(w, fac), inv);
  }

  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);

  for (; k < n; ++k) {
    const double r = 0.5 * p.L * (1.0 + nodes.u[k]);
    const double lmr = 0.5 * p.L * nodes.om[k];
    const double w2 = p.A * lmr * (r - p.Lneg);
    double fac;
    switch (p.kind) {
      case 1: fac = p.c * r; break;
      case 2: fac = r * (p.logL + nodes.lg[k]); break;
      default: fac = 1.0; break;
    }
    total += nodes.w[k] * fac / std::sqrt(w2);
  }
  return total;
}

}  // namespace nek::simd

#endif  // aarch64
