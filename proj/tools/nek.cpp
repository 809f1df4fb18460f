// Batch front-end for the narrow-escape toolkit: asymptotic constant
// tables, disk-operator diagnostics, boundary-kernel profiles, and the
// Monte Carlo cross-checks. See README.md for the config schema and the
// output formats.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nek/commands.hpp"
#include "nek/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"narrow escape kit: asymptotic constants vs stochastic simulation"};
  app.require_subcommand(1);
  app.fallthrough();  // allow global flags after the subcommand name

  nek::CliOptions opts;
  std::string sign = "theorem";

  app.add_option("--config", opts.config_path, "experiment config (JSON)")->required();
  app.add_option("--out", opts.out_dir, "output directory (overrides config)");
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "seed override");
  app.add_option("--threads", opts.threads, "worker threads (default: NEK_THREADS env, else hardware)");
  app.add_flag("--order-doubled", opts.order_doubled, "double all quadrature orders (self-check)");
  app.add_option("--sign-convention", sign, "theorem|section4")
      ->check(CLI::IsMember({"theorem", "section4"}));

  auto* constants = app.add_subcommand("constants", "asymptotic expansion table per (eps, a)");
  auto* operators = app.add_subcommand("operators", "K_a and the disk double integrals per a");
  auto* compare = app.add_subcommand("compare", "asymptotic average vs Monte Carlo per (eps, a)");
  auto* kernel = app.add_subcommand("kernel", "singular kernel terms along a boundary ray");
  auto* calibrate = app.add_subcommand("mc-calibrate", "fully absorbing sphere checks");

  CLI11_PARSE(app, argc, argv);

  opts.seed_overridden = seed_opt->count() > 0;
  opts.seed = seed;
  opts.sign = sign == "section4" ? nek::SignConvention::Section4 : nek::SignConvention::Theorem;

  try {
    const nek::ExperimentConfig cfg = nek::load_config(opts.config_path);
    if (constants->parsed()) return nek::cmd_constants(cfg, opts);
    if (operators->parsed()) return nek::cmd_operators(cfg, opts);
    if (compare->parsed()) return nek::cmd_compare(cfg, opts);
    if (kernel->parsed()) return nek::cmd_kernel(cfg, opts);
    if (calibrate->parsed()) return nek::cmd_mc_calibrate(cfg, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
