#include <cmath>
#include <string>

#include "pinpat/catalog.hpp"
#include "pinpat/errors.hpp"
#include "pinpat/lab/commands.hpp"
#include "pinpat/lab/experiments.hpp"
#include "pinpat/lab/output.hpp"
#include "pinpat/torus_ap.hpp"

namespace pinpat::lab {

namespace {

ojson log_real_json(const LogReal& v) {
  ojson j;
  j["depth"] = v.depth;
  j["describe"] = v.describe();
  const auto lin = v.linear();
  j["value"] = lin ? ojson(*lin) : ojson(nullptr);
  if (v.depth == 0) j["log"] = static_cast<double>(v.log);
  else j["top"] = static_cast<double>(v.top);
  return j;
}

}  // namespace

int cmd_catalog(const ExperimentConfig& cfg) {
  require(cfg.k >= 3, ErrorCode::ConfigError, "k must be >= 3");
  const PrimeChoice prime = config_prime(cfg);
  CatalogSpec spec{cfg.k, cfg.d, prime.n(), cfg.c_d, cfg.epsilon0};
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, std::string("catalog rejected: ") + e.what());
  }
  RunReport rep("catalog", cfg);
  Stopwatch sw;
  const TheoremConstants tc = theorem_constants(cfg.k, cfg.d, cfg.epsilon0, cfg.c_d);
  auto& res = rep.results();
  res["n_plus_1"] = prime.prime;
  res["n"] = prime.n();
  res["prime_source"] = prime_source_name(prime.source);
  res["out_of_theory_window"] = prime.out_of_theory_window();
  res["window_lo"] = prime.window_lo;
  res["window_hi"] = std::isfinite(prime.window_hi) ? ojson(prime.window_hi) : ojson(nullptr);
  res["step_angle"] = kTwoPi / static_cast<double>(prime.prime);
  res["constants"] = {{"epsilon", log_real_json(tc.epsilon)},
                      {"m_d", tc.m_d},
                      {"epsilon_tilde", log_real_json(tc.epsilon_tilde)},
                      {"c_exponent", tc.c_exponent}};

  // listed patterns, and a full pass over the catalog for the unit-circle invariant
  CsvTable csv({"pattern_index", "point_index", "x", "y"});
  ojson listed = ojson::array();
  std::uint64_t bad = 0;
  ojson repro = nullptr;
  const std::uint32_t limit = cfg.list_limit > 0 ? static_cast<std::uint32_t>(cfg.list_limit) : prime.n();
  for (std::uint32_t i = 1; i <= prime.n(); ++i) {
    const Pattern v = catalog_pattern(i, cfg.k, prime.n(), cfg.d);
    bool ok = v[0].is_zero();
    for (int j = 1; j < v.size(); ++j) ok = ok && std::abs(v[j].norm() - 1.0) <= kTolerances.unit_norm;
    if (!ok) {
      ++bad;
      if (repro.is_null()) repro = {{"pattern_index", i}};
    }
    if (i <= limit) {
      ojson pts = ojson::array();
      for (int j = 0; j < v.size(); ++j) {
        pts.push_back(std::vector<double>(v[j].coords().begin(), v[j].coords().end()));
        csv.add({std::to_string(i), std::to_string(j), csv_number(v[j][0]), csv_number(v[j][1])});
      }
      listed.push_back({{"index", i}, {"points", std::move(pts)}});
    }
  }
  rep.time("catalog", sw.seconds());
  res["patterns"] = std::move(listed);
  rep.check("catalog_on_unit_circle", bad == 0, std::to_string(bad) + " patterns leave the unit circle", repro);
  const double eta_cap = cfg.epsilon0 / (10.0 * cfg.c_d);
  rep.check("eta_below_cap", cfg.eta < eta_cap ? Verdict::pass : Verdict::warn,
            "eta = " + csv_number(cfg.eta) + ", cap epsilon0/(10 C_d) = " + csv_number(eta_cap));
  if (prime.out_of_theory_window())
    rep.check("theory_prime_window", Verdict::warn,
              std::string("prime comes from the ") + prime_source_name(prime.source) + " rule");

  ensure_dir(cfg.out);
  csv.write(cfg.out + "/catalog.csv");
  rep.write(cfg.out);
  return rep.exit_code();
}

}  // namespace pinpat::lab
