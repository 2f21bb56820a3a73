#include "pinpat/lab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "pinpat/errors.hpp"

namespace pinpat::lab {

namespace {

using json = nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::ConfigError, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(ErrorCode::ConfigError, "unknown key '" + it.key() + "' in " + where);
}

template <class T>
void get(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  static const std::set<std::string> top{
      "experiment", "k", "d", "epsilon0", "c_d", "eta", "prime_override", "pitch", "tol", "pitch_factor",
      "r_grid", "pins", "pin_radius", "seed", "threads", "out", "pattern", "alpha", "shrink_exponent",
      "slack_exponent", "mc_samples", "brute_force_stride", "set", "n_min", "n_max", "m_values", "exact_limit",
      "primes", "search_restarts", "search_iterations", "random_unions", "perturbations", "quadrature_points",
      "dims", "nodes", "sphere_radius", "area_tolerance", "volume_tolerance", "coarea", "list_limit",
      "pattern_limit"};
  check_keys(j, top, "config");
  ExperimentConfig c;
  get(j, "experiment", c.experiment);
  get(j, "k", c.k);
  get(j, "d", c.d);
  get(j, "epsilon0", c.epsilon0);
  get(j, "c_d", c.c_d);
  get(j, "eta", c.eta);
  get(j, "prime_override", c.prime_override);
  get(j, "pitch", c.pitch);
  get(j, "tol", c.tol);
  get(j, "pitch_factor", c.pitch_factor);
  if (j.contains("r_grid")) {
    const auto& g = j.at("r_grid");
    check_keys(g, {"mode", "lo", "hi", "count"}, "r_grid");
    get(g, "mode", c.r_grid.mode);
    get(g, "lo", c.r_grid.lo);
    get(g, "hi", c.r_grid.hi);
    get(g, "count", c.r_grid.count);
  }
  get(j, "pins", c.pins);
  get(j, "pin_radius", c.pin_radius);
  get(j, "seed", c.seed);
  get(j, "threads", c.threads);
  get(j, "out", c.out);
  if (j.contains("pattern")) {
    const auto& p = j.at("pattern");
    if (p.is_string()) {
      c.pattern = p.get<std::string>();
    } else if (p.is_array()) {
      c.pattern = "points";
      get(j, "pattern", c.pattern_points);
    } else {
      fail(ErrorCode::ConfigError, "pattern must be a name or a list of points");
    }
  }
  get(j, "alpha", c.alpha);
  get(j, "shrink_exponent", c.shrink_exponent);
  get(j, "slack_exponent", c.slack_exponent);
  get(j, "mc_samples", c.mc_samples);
  get(j, "brute_force_stride", c.brute_force_stride);
  if (j.contains("set")) {
    const auto& s = j.at("set");
    check_keys(s, {"generator", "radius", "ball_radius", "spacing", "count", "path"}, "set");
    get(s, "generator", c.set.generator);
    get(s, "radius", c.set.radius);
    get(s, "ball_radius", c.set.ball_radius);
    get(s, "spacing", c.set.spacing);
    get(s, "count", c.set.count);
    get(s, "path", c.set.path);
  }
  get(j, "n_min", c.n_min);
  get(j, "n_max", c.n_max);
  get(j, "m_values", c.m_values);
  get(j, "exact_limit", c.exact_limit);
  get(j, "primes", c.primes);
  get(j, "search_restarts", c.search_restarts);
  get(j, "search_iterations", c.search_iterations);
  get(j, "random_unions", c.random_unions);
  get(j, "perturbations", c.perturbations);
  get(j, "quadrature_points", c.quadrature_points);
  get(j, "dims", c.dims);
  get(j, "nodes", c.nodes);
  get(j, "sphere_radius", c.sphere_radius);
  get(j, "area_tolerance", c.area_tolerance);
  get(j, "volume_tolerance", c.volume_tolerance);
  get(j, "coarea", c.coarea);
  get(j, "list_limit", c.list_limit);
  get(j, "pattern_limit", c.pattern_limit);

  require(c.k >= 2, ErrorCode::ConfigError, "k must be >= 2");
  require(c.d >= 2 && c.d <= 8, ErrorCode::ConfigError, "d must lie in 2..8");
  require(c.pins >= 1, ErrorCode::ConfigError, "pins must be >= 1");
  require(c.r_grid.count >= 1, ErrorCode::ConfigError, "r_grid.count must be >= 1");
  require(c.r_grid.mode == "relative" || c.r_grid.mode == "absolute", ErrorCode::ConfigError,
          "r_grid.mode must be relative or absolute");
  require(c.r_grid.lo > 0.0 && c.r_grid.hi >= c.r_grid.lo, ErrorCode::ConfigError, "r_grid needs 0 < lo <= hi");
  require(c.pitch >= 0.0 && c.tol >= 0.0 && c.pitch_factor > 0.0, ErrorCode::ConfigError,
          "pitch, tol and pitch_factor must be non-negative");
  require(c.threads >= 0, ErrorCode::ConfigError, "threads must be >= 0");
  require(c.c_d > 0.0, ErrorCode::ConfigError, "c_d must be positive");
  require(c.epsilon0 > 0.0 && c.epsilon0 <= 1.0, ErrorCode::ConfigError, "epsilon0 must lie in (0, 1]");
  require(c.eta > 0.0, ErrorCode::ConfigError, "eta must be positive");
  {
    static const char* const generators[] = {"cone", "grid-disk", "lattice-of-balls", "random-union", "file", "empty"};
    bool known = false;
    for (const char* g : generators) known = known || c.set.generator == g;
    if (!known) fail(ErrorCode::ConfigError, "unknown set generator '" + c.set.generator + "'");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorCode::ConfigError, "override must look like key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  json* node = &doc;
  std::stringstream ks(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ks, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->contains(parts[i])) (*node)[parts[i]] = json::object();
    node = &(*node)[parts[i]];
  }
  (*node)[parts.back()] = value;
}

ojson config_echo(const ExperimentConfig& c) {
  ojson j;
  j["experiment"] = c.experiment;
  j["k"] = c.k;
  j["d"] = c.d;
  j["epsilon0"] = c.epsilon0;
  j["c_d"] = c.c_d;
  j["eta"] = c.eta;
  j["prime_override"] = c.prime_override;
  j["pitch"] = c.pitch;
  j["tol"] = c.tol;
  j["pitch_factor"] = c.pitch_factor;
  j["r_grid"] = {{"mode", c.r_grid.mode}, {"lo", c.r_grid.lo}, {"hi", c.r_grid.hi}, {"count", c.r_grid.count}};
  j["pins"] = c.pins;
  j["pin_radius"] = c.pin_radius;
  j["seed"] = c.seed;
  if (c.pattern == "points")
    j["pattern"] = c.pattern_points;
  else
    j["pattern"] = c.pattern;
  j["alpha"] = c.alpha;
  j["shrink_exponent"] = c.shrink_exponent;
  j["slack_exponent"] = c.slack_exponent;
  j["mc_samples"] = c.mc_samples;
  j["brute_force_stride"] = c.brute_force_stride;
  j["set"] = {{"generator", c.set.generator}, {"radius", c.set.radius}, {"ball_radius", c.set.ball_radius},
              {"spacing", c.set.spacing},     {"count", c.set.count},   {"path", c.set.path}};
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  j["m_values"] = c.m_values;
  j["exact_limit"] = c.exact_limit;
  j["primes"] = c.primes;
  j["search_restarts"] = c.search_restarts;
  j["search_iterations"] = c.search_iterations;
  j["random_unions"] = c.random_unions;
  j["perturbations"] = c.perturbations;
  j["quadrature_points"] = c.quadrature_points;
  j["dims"] = c.dims;
  j["nodes"] = c.nodes;
  j["sphere_radius"] = c.sphere_radius;
  j["area_tolerance"] = c.area_tolerance;
  j["volume_tolerance"] = c.volume_tolerance;
  j["coarea"] = c.coarea;
  j["list_limit"] = c.list_limit;
  j["pattern_limit"] = c.pattern_limit;
  return j;
}

}  // namespace pinpat::lab
