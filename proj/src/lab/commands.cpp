#include "pinpat/lab/commands.hpp"

#include "pinpat/errors.hpp"

namespace pinpat::lab {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"rm-table",    "torus-verify", "cone-demo",       "catalog",
                                              "pinned-scan", "sphere-check", "distance-density"};
  return names;
}

int run_command(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "rm-table") return cmd_rm_table(cfg);
  if (name == "torus-verify") return cmd_torus_verify(cfg);
  if (name == "cone-demo") return cmd_cone_demo(cfg);
  if (name == "catalog") return cmd_catalog(cfg);
  if (name == "pinned-scan") return cmd_pinned_scan(cfg);
  if (name == "sphere-check") return cmd_sphere_check(cfg);
  if (name == "distance-density") return cmd_distance_density(cfg);
  fail(ErrorCode::ConfigError, "unknown subcommand " + name);
}

std::vector<std::string> command_outputs(const std::string& name) {
  if (name == "rm-table") return {"rm_table.csv", "rm-table.json"};
  if (name == "torus-verify") return {"torus-verify.json"};
  if (name == "cone-demo") return {"cone-demo.json", "cone_demo.svg"};
  if (name == "catalog") return {"catalog.csv", "catalog.json"};
  if (name == "pinned-scan") return {"pinned_scan.csv", "pinned-scan.json", "pinned_scan.svg"};
  if (name == "sphere-check") return {"sphere-check.json"};
  if (name == "distance-density") return {"distance-density.json"};
  fail(ErrorCode::ConfigError, "unknown subcommand " + name);
}

}  // namespace pinpat::lab
