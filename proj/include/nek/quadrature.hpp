#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nek {

// Gauss-Legendre rule on [-1, 1]. Nodes ascending. Cached per n, thread-safe.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

// Double-exponential (tanh-sinh) rule on (-1, 1). Robust against integrable
// endpoint singularities (log, inverse square root). Nodes come with their
// distances to both endpoints evaluated without cancellation:
//   node u_k, weight w_k, om_k = 1 - u_k, op_k = 1 + u_k.
// lg_k = log(op_k / 2) is precomputed because r = L*(1+u)/2 makes
// log r = log L + lg_k in the ray integrals.
struct TanhSinhRule {
  std::vector<double> u;
  std::vector<double> w;
  std::vector<double> om;
  std::vector<double> op;
  std::vector<double> lg;
  int size() const { return static_cast<int>(u.size()); }
};
// level 3..9; node count roughly 55 * 2^(level-3).
const TanhSinhRule& tanh_sinh(int level);

// Fixed-order summation helpers. pairwise_sum is used for every reduction
// whose result must not depend on thread count or SIMD width.
double pairwise_sum(std::span<const double> xs);

// Compensated (Kahan) accumulator for long sequential sums.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

// Run fn(i) for i in [0, n) over at most n_threads workers, contiguous
// chunks. fn must only write to per-index state; the caller reduces.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn);

// Thread count resolution: explicit argument > NEK_THREADS env > hardware.
int resolve_threads(int requested);

}  // namespace nek
