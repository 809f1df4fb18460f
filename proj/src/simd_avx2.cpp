#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "nek/simd.hpp"

namespace nek::simd {

// AVX2 variant of ray_sum_scalar, 4 radial nodes per iteration. The three
// kernel kinds share the loop; the factor is blended per kind outside the
// hot sqrt/div chain. Accumulates in 4 independent lanes and reduces once.
double ray_sum_avx2(const TanhSinhRule& nodes, const RayParams& p) {
  const int n = nodes.size();
  const __m256d halfL = _mm256_set1_pd(0.5 * p.L);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d A = _mm256_set1_pd(p.A);
  const __m256d Lneg = _mm256_set1_pd(p.Lneg);
  const __m256d cc = _mm256_set1_pd(p.c);
  const __m256d logL = _mm256_set1_pd(p.logL);
  __m256d acc = _mm256_setzero_pd();

  int k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d u = _mm256_loadu_pd(&nodes.u[k]);
    const __m256d om = _mm256_loadu_pd(&nodes.om[k]);
    const __m256d w = _mm256_loadu_pd(&nodes.w[k]);
    const __m256d r = _mm256_mul_pd(halfL, _mm256_add_pd(one, u));
    const __m256d lmr = _mm256_mul_pd(halfL, om);
    const __m256d w2 =
        _mm256_mul_pd(A, _mm256_mul_pd(lmr, _mm256_sub_pd(r, Lneg)));
    __m256d fac;
    if (p.kind == 1) {
      fac = _mm256_mul_pd(cc, r);
    } else if (p.kind == 2) {
      const __m256d lg = _mm256_loadu_pd(&nodes.lg[k]);
      fac = _mm256_mul_pd(r, _mm256_add_pd(logL, lg));
    } else {
      fac = one;
    }
    const __m256d inv = _mm256_div_pd(one, _mm256_sqrt_pd(w2));
    acc = _mm256_fmadd_pd(_mm256_mul_pd(w, fac), inv, acc);
  }

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);

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

#endif  // x86_64
