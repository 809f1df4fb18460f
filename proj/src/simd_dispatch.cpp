#include <cstdlib>
#include <cstring>

#include "nek/simd.hpp"

namespace nek::simd {

namespace {

Isa detect_isa() {
  if (const char* env = std::getenv("NEK_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  }
#if defined(__aarch64__)
  return Isa::Neon;
#elif defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
  return Isa::Scalar;
#else
  return Isa::Scalar;
#endif
}

RaySumFn select_ray_sum(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return &ray_sum_avx2;
#endif
#if defined(__aarch64__)
    case Isa::Neon: return &ray_sum_neon;
#endif
    default: return &ray_sum_scalar;
  }
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect_isa();
  return isa;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    default: return "scalar";
  }
}

double ray_sum(const TanhSinhRule& nodes, const RayParams& p) {
  static const RaySumFn fn = select_ray_sum(active_isa());
  return fn(nodes, p);
}

}  // namespace nek::simd
