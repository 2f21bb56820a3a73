// pinpat: command-line front end for the pattern lab.
//
//   pinpat <subcommand> [--config file.json] [--seed N] [--threads N] [--out DIR] [--set key=value]...
//
// Exit status: 0 all checks PASS or WARN, 1 any FAIL, 2 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "pinpat/errors.hpp"
#include "pinpat/lab/commands.hpp"
#include "pinpat/lab/config.hpp"
#include "pinpat/parallel.hpp"

namespace {

struct Options {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;
  std::string out;
  std::vector<std::string> overrides;
};

int run(const std::string& name, const Options& o) {
  nlohmann::json doc = nlohmann::json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) pinpat::fail(pinpat::ErrorCode::ConfigError, "cannot open config file " + o.config);
    doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) pinpat::fail(pinpat::ErrorCode::ConfigError, "config is not valid JSON");
  }
  for (const auto& s : o.overrides) pinpat::lab::apply_override(doc, s);
  if (o.seed_set) doc["seed"] = o.seed;
  if (o.threads >= 0) doc["threads"] = o.threads;
  if (!o.out.empty()) doc["out"] = o.out;
  if (!doc.contains("experiment")) doc["experiment"] = name;
  const pinpat::lab::ExperimentConfig cfg = pinpat::lab::config_from_json(doc);
  pinpat::set_thread_count(cfg.threads);
  return pinpat::lab::run_command(name, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pinpat: pinned pattern experiments"};
  app.require_subcommand(1);
  Options opts;
  std::string chosen;
  for (const auto& name : pinpat::lab::command_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", opts.config, "JSON configuration file");
    sub->add_option("--seed", opts.seed, "random seed")->each([&](const std::string&) { opts.seed_set = true; });
    sub->add_option("--threads", opts.threads, "worker threads (0: PINPAT_THREADS, then the OpenMP default)");
    sub->add_option("--out", opts.out, "output directory");
    sub->add_option("--set", opts.overrides, "override one config field, key=value (dots for nested keys)");
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run(chosen, opts);
  } catch (const pinpat::Error& e) {
    std::cerr << "pinpat " << chosen << ": " << pinpat::error_name(e.code()) << ": " << e.what() << "\n";
    return e.code() == pinpat::ErrorCode::ConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "pinpat " << chosen << ": " << e.what() << "\n";
    return 1;
  }
}
