#pragma once

#include <string>
#include <vector>

#include "pinpat/lab/config.hpp"

namespace pinpat::lab {

// Each subcommand writes its artifacts under cfg.out and returns the exit
// code: 0 when every check is PASS or WARN, 1 on any FAIL. Configuration
// problems surface as Error(ConfigError), which the CLI maps to 2.
int cmd_rm_table(const ExperimentConfig& cfg);
int cmd_torus_verify(const ExperimentConfig& cfg);
int cmd_cone_demo(const ExperimentConfig& cfg);
int cmd_catalog(const ExperimentConfig& cfg);
int cmd_pinned_scan(const ExperimentConfig& cfg);
int cmd_sphere_check(const ExperimentConfig& cfg);
int cmd_distance_density(const ExperimentConfig& cfg);

const std::vector<std::string>& command_names();
int run_command(const std::string& name, const ExperimentConfig& cfg);

// Files a subcommand writes (CSV, JSON, SVG), relative to cfg.out.
std::vector<std::string> command_outputs(const std::string& name);

}  // namespace pinpat::lab
