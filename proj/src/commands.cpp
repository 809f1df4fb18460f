#include "nek/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "json.hpp"
#include "nek/asymptotics.hpp"
#include "nek/error.hpp"
#include "nek/manifest.hpp"
#include "nek/mc.hpp"
#include "nek/quadrature.hpp"

namespace nek {

namespace {

struct RunContext {
  std::string out_dir;
  std::uint64_t seed;
  int threads;
  DoubleIntegralOrder di_order;
  SignConvention sign;
  RunManifest manifest;
};

RunContext begin_run(const ExperimentConfig& cfg, const CliOptions& opts) {
  RunContext ctx;
  ctx.out_dir = opts.out_dir.empty() ? cfg.out_dir : opts.out_dir;
  std::filesystem::create_directories(ctx.out_dir);
  ctx.seed = opts.seed_overridden ? opts.seed : cfg.mc_seed;
  ctx.threads = resolve_threads(opts.threads);
  ctx.di_order = opts.order_doubled ? DoubleIntegralOrder{}.doubled() : DoubleIntegralOrder{};
  ctx.sign = opts.sign;
  ctx.manifest.config_hash =
      opts.config_path.empty() ? "unspecified" : hex64(fnv1a64_file(opts.config_path));
  ctx.manifest.seed = ctx.seed;
  ctx.manifest.started_at = iso8601_now();
  return ctx;
}

void finish_run(RunContext& ctx, const std::vector<std::string>& files) {
  for (const auto& f : files)
    ctx.manifest.outputs.emplace_back(f, hex64(fnv1a64_file(ctx.out_dir + "/" + f)));
  ctx.manifest.finished_at = iso8601_now();
  write_manifest(ctx.out_dir, ctx.manifest);
}

SDEConfig mc_config(const ExperimentConfig& cfg, const RunContext& ctx) {
  SDEConfig sde;
  sde.dt = cfg.mc_dt;
  sde.n_paths = cfg.mc_n_paths;
  sde.seed = ctx.seed;
  if (cfg.mc_start == "uniform") {
    sde.start = SDEConfig::Start::UniformVolume;
  } else {
    sde.start = SDEConfig::Start::Point;
    sde.start_point = cfg.mc_start == "center" ? Vec3{0, 0, 0} : cfg.mc_start_point;
  }
  sde.max_time = cfg.mc_max_time;
  sde.reflection = cfg.mc_reflection == "specular" ? SDEConfig::Reflection::Specular
                                                   : SDEConfig::Reflection::NormalProjection;
  sde.n_threads = ctx.threads;
  return sde;
}

class JsonlWriter {
 public:
  JsonlWriter(std::string path, bool enabled) : enabled_(enabled), path_(std::move(path)) {
    if (enabled_) out_.open(path_, std::ios::binary);
  }
  void record(const nlohmann::json& j) {
    if (enabled_) out_ << j.dump() << "\n";
  }
  void close() {
    if (enabled_) out_.close();
  }
  bool enabled() const { return enabled_; }

 private:
  bool enabled_;
  std::string path_;
  std::ofstream out_;
};

nlohmann::json mc_record(const ExperimentConfig& cfg, const SDEConfig& sde, double eps, double a,
                         const EscapeEstimate& est, double wall_s) {
  nlohmann::json j;
  j["eps"] = eps;
  j["a"] = a;
  j["dt"] = sde.dt;
  j["n_paths"] = sde.n_paths;
  j["seed"] = sde.seed;
  j["start"] = cfg.mc_start;
  j["reflection"] = cfg.mc_reflection;
  j["max_time"] = sde.max_time;
  j["refine_levels"] = cfg.mc_refine_levels;
  j["mean"] = est.mean;
  j["stderr"] = est.stderr_;
  j["n_absorbed"] = est.n_absorbed;
  j["n_censored"] = est.n_censored;
  j["flag"] = est.flag;
  j["wall_time_s"] = wall_s;
  return j;
}

}  // namespace

int cmd_constants(const ExperimentConfig& cfg, const CliOptions& opts) {
  RunContext ctx = begin_run(cfg, opts);
  const DomainModel domain = unit_ball(cfg.radius);
  const GreenProvider provider = cfg.make_green_provider(domain);
  const Vec3 xstar = cfg.window_center();

  CsvWriter csv(ctx.out_dir + "/constants.csv",
                {"eps", "a", "leading", "log_term", "constant_term", "total", "note"});
  for (double a : cfg.a_list) {
    EllipseIntegrals pre;
    bool have_pre = false;
    for (double eps : cfg.eps_list) {
      try {
        const WindowSpec window = make_window(domain, xstar, eps, a);
        NETExpansion e;
        if (a == 1.0) {
          e = net_constant_disk(domain, cfg.potential, window, provider, ctx.sign);
        } else {
          if (!have_pre) {
            pre = compute_ellipse_integrals(a, ctx.di_order, ctx.threads);
            have_pre = true;
          }
          e = net_constant_ellipse(domain, cfg.potential, window, provider, ctx.sign, 1e-9, &pre,
                                   ctx.threads);
        }
        csv.row({format_g17(eps), format_g17(a), format_g17(e.leading), format_g17(e.log_term),
                 format_g17(e.constant_term), format_g17(e.total), ""});
      } catch (const NotConfigured& e) {
        csv.row({format_g17(eps), format_g17(a), "NA", "NA", "NA", "NA", e.what()});
      } catch (const QuadratureFailure& e) {
        csv.row({format_g17(eps), format_g17(a), "NA", "NA", "NA", "NA", e.what()});
      }
    }
  }
  csv.close();
  finish_run(ctx, {"constants.csv"});
  return 0;
}

int cmd_operators(const ExperimentConfig& cfg, const CliOptions& opts) {
  RunContext ctx = begin_run(cfg, opts);
  CsvWriter csv(ctx.out_dir + "/operators.csv",
                {"a", "K_a", "I_log", "I_aniso", "RF_residual", "note"});
  for (double a : cfg.a_list) {
    try {
      const double Ka = elliptic_Ka(a).value;
      const double Ilog = integral_Ilog(a, ctx.di_order, ctx.threads);
      const double Ianiso = integral_Ianiso(a, ctx.di_order, ctx.threads);
      // Residual reported for the reference force (1, 0).
      const double rf = check_RF_vanishing(a, 1.0, 0.0, ctx.di_order, ctx.threads);
      csv.row({format_g17(a), format_g17(Ka), format_g17(Ilog), format_g17(Ianiso),
               format_g17(rf), ""});
    } catch (const QuadratureFailure& e) {
      csv.row({format_g17(a), "NA", "NA", "NA", "NA", e.what()});
    }
  }
  csv.close();
  finish_run(ctx, {"operators.csv"});
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg, const CliOptions& opts) {
  RunContext ctx = begin_run(cfg, opts);
  const DomainModel domain = unit_ball(cfg.radius);
  const GreenProvider provider = cfg.make_green_provider(domain);
  const Vec3 xstar = cfg.window_center();

  CsvWriter csv(ctx.out_dir + "/compare.csv",
                {"eps", "a", "asymptotic_avg", "mc_mean", "mc_stderr", "rel_diff", "z_score",
                 "note"});
  JsonlWriter jsonl(ctx.out_dir + "/mc_runs.jsonl", cfg.emit_jsonl);

  for (double a : cfg.a_list) {
    EllipseIntegrals pre;
    bool have_pre = false;
    for (double eps : cfg.eps_list) {
      try {
        const WindowSpec window = make_window(domain, xstar, eps, a);
        NETExpansion e;
        if (a == 1.0) {
          e = net_constant_disk(domain, cfg.potential, window, provider, ctx.sign);
        } else {
          if (!have_pre) {
            pre = compute_ellipse_integrals(a, ctx.di_order, ctx.threads);
            have_pre = true;
          }
          e = net_constant_ellipse(domain, cfg.potential, window, provider, ctx.sign, 1e-9, &pre,
                                   ctx.threads);
        }
        const SojournField field{domain, e, provider, window};
        const double asym = averaged_sojourn(field);

        const SDEConfig sde = mc_config(cfg, ctx);
        const auto t0 = std::chrono::steady_clock::now();
        const EscapeEstimate est =
            cfg.mc_refine_levels >= 2
                ? dt_refinement(domain, cfg.potential, window, sde, cfg.mc_refine_levels)
                : estimate_mean_escape(domain, cfg.potential, window, sde);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        jsonl.record(mc_record(cfg, sde, eps, a, est, wall));

        const double rel = (est.mean - asym) / asym;
        const double z = (est.mean - asym) / est.stderr_;
        csv.row({format_g17(eps), format_g17(a), format_g17(asym), format_g17(est.mean),
                 format_g17(est.stderr_), format_g17(rel), format_g17(z), est.flag});
      } catch (const NoAbsorption& e) {
        csv.row({format_g17(eps), format_g17(a), "NA", "NA", "NA", "NA", "NA", e.what()});
      } catch (const NotConfigured& e) {
        csv.row({format_g17(eps), format_g17(a), "NA", "NA", "NA", "NA", "NA", e.what()});
      }
    }
  }
  csv.close();
  jsonl.close();
  std::vector<std::string> files{"compare.csv"};
  if (jsonl.enabled()) files.push_back("mc_runs.jsonl");
  finish_run(ctx, files);
  return 0;
}

int cmd_kernel(const ExperimentConfig& cfg, const CliOptions& opts) {
  RunContext ctx = begin_run(cfg, opts);
  const DomainModel domain = unit_ball(cfg.radius);
  const Vec3 xstar = cfg.window_center();
  const BoundaryFrame frame = boundary_frame(domain, xstar);
  const Vec3 F = force(cfg.potential, domain, xstar);
  const Vec3 dir = std::cos(cfg.kernel_direction_angle) * frame.e1 +
                   std::sin(cfg.kernel_direction_angle) * frame.e2;

  std::vector<double> distances = cfg.kernel_distances;
  if (distances.empty()) distances = {1e-1, 5e-2, 2.5e-2, 1e-2};

  CsvWriter csv(ctx.out_dir + "/kernel.csv",
                {"distance", "coulomb", "log_term", "ii_difference", "drift_directional",
                 "total_singular", "note"});
  for (double d : distances) {
    try {
      const Vec3 y = sphere_exp(domain, xstar, d * dir);
      const SingularKernelTerms terms = kernel_singular(domain, xstar, y, frame, F, ctx.sign);
      csv.row({format_g17(d), format_g17(terms.coulomb), format_g17(terms.log_term),
               format_g17(terms.ii_difference), format_g17(terms.drift_directional),
               format_g17(terms.total_singular), ""});
    } catch (const std::domain_error& e) {
      csv.row({format_g17(d), "NA", "NA", "NA", "NA", "NA", e.what()});
    }
  }
  csv.close();
  finish_run(ctx, {"kernel.csv"});
  return 0;
}

int cmd_mc_calibrate(const ExperimentConfig& cfg, const CliOptions& opts) {
  RunContext ctx = begin_run(cfg, opts);
  const DomainModel domain = unit_ball(cfg.radius);
  const WindowSpec window = full_boundary_window(domain);
  const double R2 = cfg.radius * cfg.radius;

  CsvWriter csv(ctx.out_dir + "/calibrate.csv",
                {"case", "expected", "mean", "stderr", "z_score", "n_absorbed", "n_censored",
                 "note"});
  JsonlWriter jsonl(ctx.out_dir + "/mc_runs.jsonl", cfg.emit_jsonl);

  struct Case {
    const char* name;
    SDEConfig::Start start;
    double expected;
  };
  // Fully absorbing sphere with zero potential: the mean exit time solves
  // Lap u = -1, u = 0 on the boundary, i.e. u = (R^2 - r^2)/6, so the
  // center value is R^2/6 and the volume average is R^2/15.
  const Case cases[] = {{"center", SDEConfig::Start::Point, R2 / 6.0},
                        {"uniform", SDEConfig::Start::UniformVolume, R2 / 15.0}};
  for (const Case& c : cases) {
    SDEConfig sde = mc_config(cfg, ctx);
    sde.start = c.start;
    sde.start_point = Vec3{0, 0, 0};
    const auto t0 = std::chrono::steady_clock::now();
    const EscapeEstimate est = estimate_mean_escape(domain, PotentialField::zero(), window, sde);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    jsonl.record(mc_record(cfg, sde, window.eps, 1.0, est, wall));
    const double z = (est.mean - c.expected) / est.stderr_;
    csv.row({c.name, format_g17(c.expected), format_g17(est.mean), format_g17(est.stderr_),
             format_g17(z), std::to_string(est.n_absorbed), std::to_string(est.n_censored),
             est.flag});
  }
  csv.close();
  jsonl.close();
  std::vector<std::string> files{"calibrate.csv"};
  if (jsonl.enabled()) files.push_back("mc_runs.jsonl");
  finish_run(ctx, files);
  return 0;
}

}  // namespace nek
