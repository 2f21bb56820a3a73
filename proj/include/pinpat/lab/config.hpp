#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace pinpat::lab {

using ojson = nlohmann::ordered_json;

struct RGridSpec {
  std::string mode = "relative";  // relative: [lo R(x), hi R(x)]; absolute: [lo, hi]
  double lo = 1.0;
  double hi = 10.0;
  int count = 2000;
};

struct SetSpec {
  std::string generator = "cone";  // cone | grid-disk | lattice-of-balls | random-union | file | empty
  double radius = 0.0;             // 0 picks a generator-specific default
  double ball_radius = 0.5;
  double spacing = 2.0;
  int count = 20;
  std::string path;
};

// One JSON document drives every subcommand. Unknown keys are rejected.
struct ExperimentConfig {
  std::string experiment;
  int k = 3;
  int d = 2;
  double epsilon0 = 1.0;
  double c_d = 1.0;
  double eta = 0.05;                 // density slack, must satisfy eta < epsilon0 / (10 C_d)
  std::uint64_t prime_override = 0;  // n + 1; 0 keeps the rule of the subcommand
  double pitch = 0.0;                // 0: automatic
  double tol = 0.0;                  // 0: one pitch
  double pitch_factor = 1.5;         // cone pitch = alpha' |x|_min / pitch_factor
  RGridSpec r_grid;
  int pins = 10;
  double pin_radius = 0.0;           // 0: a quarter of the set radius
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out = "pinpat_out";

  // cone
  std::string pattern = "equilateral";
  std::vector<std::vector<double>> pattern_points;
  double alpha = 0.0;  // 0: smallest angle of the pattern
  int shrink_exponent = 11;
  int slack_exponent = 10;
  std::uint64_t mc_samples = 1000000;
  int brute_force_stride = 100;
  SetSpec set;

  // rm-table
  std::uint32_t n_min = 3;
  std::uint32_t n_max = 40;
  std::vector<int> m_values{2, 3, 4};
  int exact_limit = 40;

  // torus-verify
  std::vector<std::uint32_t> primes{5, 11, 101, 499};
  int search_restarts = 8;
  int search_iterations = 400;
  int random_unions = 100;
  int perturbations = 50;
  int quadrature_points = 3;

  // sphere-check
  std::vector<int> dims{2, 3, 4, 5};
  int nodes = 16;
  double sphere_radius = 1.0;
  double area_tolerance = 1e-5;
  double volume_tolerance = 1e-4;
  bool coarea = true;

  // catalog / pinned-scan
  int list_limit = 64;
  int pattern_limit = 0;  // 0: every catalog pattern
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
// key=value, value parsed as JSON when possible, else as a string. Nested keys use dots.
void apply_override(nlohmann::json& doc, const std::string& assignment);
// Echo of the effective configuration; execution-only knobs (threads, out) are omitted.
ojson config_echo(const ExperimentConfig& c);

}  // namespace pinpat::lab
