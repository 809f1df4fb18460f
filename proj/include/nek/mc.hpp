#pragma once

#include <cstdint>
#include <string>

#include "nek/geometry.hpp"
#include "nek/potential.hpp"
#include "nek/vec3.hpp"

namespace nek {

// Euler-Maruyama for the diffusion generated by Lap + F . grad:
//   dX = F(X) dt + sqrt(2) dW
// (the sqrt(2) is pinned by the fully-absorbing-sphere calibration, where
// the mean exit time from the center must be R^2/6). The boundary is
// reflecting except on the window, which absorbs; a step that crosses the
// sphere is absorbed iff the crossing point lies in the window, otherwise
// reflected. Steps that stay inside take a Brownian-bridge contact test,
// which removes the O(sqrt(dt)) boundary-monitoring bias; the residual
// O(dt) bias is handled by dt refinement.
struct SDEConfig {
  double dt = 1e-4;
  std::int64_t n_paths = 1;
  std::uint64_t seed = 0;
  enum class Start { Point, UniformVolume };
  Start start = Start::Point;
  Vec3 start_point{0.0, 0.0, 0.0};
  double max_time = 0.0;  // 0 = auto: 50 x the leading-order scale Phi/(4 eps)
  enum class Reflection { NormalProjection, Specular };
  Reflection reflection = Reflection::NormalProjection;
  int n_threads = 1;
};

struct EscapeEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t n_absorbed = 0;
  std::int64_t n_censored = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::string flag;  // empty = clean; set when censoring exceeds 0.1% etc.
};

// One unconstrained Euler-Maruyama move (no boundary handling).
Vec3 step(Vec3 x, const PotentialField& phi, const DomainModel& domain, double dt, Vec3 noise);

// Boundary handling for a proposed move that may have left the ball.
// NormalProjection folds the radius to 2R - |x_new|; Specular mirrors
// across the tangent plane at the exit point. Throws StepTooLarge when
// |x_new| > 3R.
Vec3 reflect(Vec3 x_new, Vec3 x_old, const DomainModel& domain,
             SDEConfig::Reflection mode = SDEConfig::Reflection::NormalProjection);

// Mean of the absorption time over absorbed paths; censored paths are
// counted and flag the estimate beyond 0.1%. Deterministic in
// (seed, n_paths, dt) regardless of n_threads: per-path RNG streams and a
// fixed-order pairwise reduction over the path index.
EscapeEstimate estimate_mean_escape(const DomainModel& domain, const PotentialField& phi,
                                    const WindowSpec& window, const SDEConfig& cfg);

// Runs the estimator at dt, dt/2, ..., dt/2^(levels-1) and extrapolates
// linearly in sqrt(dt) to dt -> 0 (weighted least squares); the returned
// stderr is the propagated one and is larger than any single level's. A
// non-monotone level sequence beyond noise returns the finest level,
// flagged.
EscapeEstimate dt_refinement(const DomainModel& domain, const PotentialField& phi,
                             const WindowSpec& window, const SDEConfig& cfg, int levels);

}  // namespace nek
