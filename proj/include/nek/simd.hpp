#pragma once

#include "nek/quadrature.hpp"

namespace nek::simd {

enum class Isa { Scalar, Avx2, Neon };

// Selected once per process: AVX2+FMA on x86-64 when the CPU has them,
// NEON on aarch64, scalar otherwise. Setting NEK_SIMD=scalar in the
// environment forces the scalar reference kernels (used by the
// equivalence tests and available for debugging).
Isa active_isa();
const char* isa_name(Isa isa);

// One ray of the kernel-adapted polar quadrature with a constant smooth
// factor. The radial substitution r = L*(1+u)/2 maps the tanh-sinh nodes
// u_k onto [0, L]; the edge weight (1-|s|^2)^{-1/2} along the ray equals
// (A*(L-r)*(r-Lneg))^{-1/2} with L, Lneg the two roots of |t + r w|^2 = 1,
// so L-r = L*om_k/2 is available without cancellation. The kernel factor
// is selected by `kind`:
//   0 (Const1): 1
//   1 (LinR):   c * r
//   2 (RLogR):  r * (logL + lg_k)     [= r log r]
struct RayParams {
  double L = 0.0;
  double Lneg = 0.0;
  double A = 1.0;
  int kind = 0;
  double c = 0.0;
  double logL = 0.0;
};

using RaySumFn = double (*)(const TanhSinhRule&, const RayParams&);

double ray_sum_scalar(const TanhSinhRule& nodes, const RayParams& p);
#if defined(__x86_64__) || defined(_M_X64)
double ray_sum_avx2(const TanhSinhRule& nodes, const RayParams& p);
#endif
#if defined(__aarch64__)
double ray_sum_neon(const TanhSinhRule& nodes, const RayParams& p);
#endif

// Dispatched entry point used by the disk operators.
double ray_sum(const TanhSinhRule& nodes, const RayParams& p);

}  // namespace nek::simd
