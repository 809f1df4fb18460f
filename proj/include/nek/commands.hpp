#pragma once

#include "nek/config.hpp"

namespace nek {

// Batch subcommands. Each one writes CSV tables (plus JSON-lines records
// for the Monte Carlo runs) into the output directory and finishes with a
// manifest listing every emitted file with its checksum.
int cmd_constants(const ExperimentConfig& cfg, const CliOptions& opts);
int cmd_operators(const ExperimentConfig& cfg, const CliOptions& opts);
int cmd_compare(const ExperimentConfig& cfg, const CliOptions& opts);
int cmd_kernel(const ExperimentConfig& cfg, const CliOptions& opts);
int cmd_mc_calibrate(const ExperimentConfig& cfg, const CliOptions& opts);

}  // namespace nek
