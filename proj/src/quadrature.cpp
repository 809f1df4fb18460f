#include "nek/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace nek {

namespace {

GaussLegendre make_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-angle initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

TanhSinhRule make_tanh_sinh(int level) {
  if (level < 1 || level > 12) throw std::invalid_argument("tanh_sinh: level out of range");
  const double h = std::ldexp(1.0, -level);
  // Positive half first; mirror afterwards so the rule is exactly symmetric.
  std::vector<double> u, w, om, op, lg;
  const double half_pi = std::numbers::pi / 2.0;
  for (int k = 0;; ++k) {
    const double t = k * h;
    const double q = half_pi * std::sinh(t);
    // 1 - tanh(q) = 2 e^{-2q} / (1 + e^{-2q}), stable for large q.
    const double e = std::exp(-2.0 * q);
    const double one_minus = 2.0 * e / (1.0 + e);
    const double node = 1.0 - one_minus;
    const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    const double weight = h * half_pi * std::cosh(t) * sech2;
    // Keep nodes while they can still matter against a (1-u)^{-1/2} factor.
    if (k > 0 && weight / std::sqrt(one_minus) < 1e-18) break;
    if (one_minus < 1e-290) break;
    u.push_back(node);
    w.push_back(weight);
    om.push_back(one_minus);
    op.push_back(2.0 - one_minus);
    if (k > 4000) throw std::logic_error("tanh_sinh: runaway node generation");
  }
  TanhSinhRule rule;
  const int np = static_cast<int>(u.size());
  // Mirror: negative nodes (reverse order), then node 0 once, then positive.
  for (int i = np - 1; i >= 1; --i) {
    rule.u.push_back(-u[i]);
    rule.w.push_back(w[i]);
    rule.om.push_back(op[i]);  // 1 - (-u) = 1 + u
    rule.op.push_back(om[i]);
  }
  for (int i = 0; i < np; ++i) {
    rule.u.push_back(u[i]);
    rule.w.push_back(w[i]);
    rule.om.push_back(om[i]);
    rule.op.push_back(op[i]);
  }
  rule.lg.resize(rule.u.size());
  for (std::size_t i = 0; i < rule.u.size(); ++i) rule.lg[i] = std::log(rule.op[i] / 2.0);
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussLegendre& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  KahanSum acc;
  for (int i = 0; i < n; ++i) acc.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
  return half * acc.value();
}

const TanhSinhRule& tanh_sinh(int level) {
  static std::mutex mu;
  static std::map<int, TanhSinhRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(level);
  if (it == cache.end()) it = cache.emplace(level, make_tanh_sinh(level)).first;
  return it->second;
}

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = xs[0];
    for (std::size_t i = 1; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  int t = n_threads;
  if (t < 1) t = 1;
  if (static_cast<std::size_t>(t) > n) t = static_cast<int>(n);
  if (t == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(t);
  const std::size_t chunk = (n + t - 1) / t;
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (int w = 0; w < t; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    workers.emplace_back([&, lo, hi]() {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : workers) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NEK_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace nek
