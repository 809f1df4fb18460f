#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nek/green.hpp"
#include "nek/potential.hpp"
#include "nek/vec3.hpp"

namespace nek {

// Experiment configuration, loaded from a single JSON file (schema in the
// README). Validation failures throw ConfigError with a path-qualified
// message such as "window.eps[1]: must be positive".
struct ExperimentConfig {
  double radius = 1.0;

  PotentialField potential;
  std::string potential_kind = "zero";

  double center_theta = 0.0;  // polar angle from +z
  double center_phi = 0.0;    // azimuth
  std::vector<double> eps_list;
  std::vector<double> a_list;

  double mc_dt = 5e-4;
  std::int64_t mc_n_paths = 10000;
  std::uint64_t mc_seed = 12345;
  std::string mc_start = "uniform";  // "uniform" | "center" | "point"
  Vec3 mc_start_point{0.0, 0.0, 0.0};
  double mc_max_time = 0.0;
  std::string mc_reflection = "normal_projection";  // | "specular"
  int mc_refine_levels = 2;

  double kernel_direction_angle = 0.0;
  std::vector<double> kernel_distances;

  std::string green_provider_kind = "ball";  // | "file"
  std::string green_provider_path;

  std::string out_dir = "out";
  bool emit_csv = true;
  bool emit_jsonl = true;

  Vec3 window_center() const;
  GreenProvider make_green_provider(const DomainModel& d) const;
};

ExperimentConfig load_config(const std::string& path);

// Options shared by every subcommand, resolved from the command line.
struct CliOptions {
  std::string config_path;
  std::string out_dir;  // empty = take from config
  bool seed_overridden = false;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = NEK_THREADS env, else hardware
  bool order_doubled = false;
  SignConvention sign = SignConvention::Theorem;
};

}  // namespace nek
