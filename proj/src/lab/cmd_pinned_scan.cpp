#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "pinpat/errors.hpp"
#include "pinpat/lab/commands.hpp"
#include "pinpat/lab/experiments.hpp"
#include "pinpat/lab/generators.hpp"
#include "pinpat/lab/output.hpp"

namespace pinpat::lab {

namespace {

// Rotation angle of the witness in the first coordinate plane.
double witness_angle(const Isometry& o) { return std::atan2(o.at(1, 0), o.at(0, 0)); }

void heatmap_svg(const CatalogScan& scan, const std::string& path) {
  const std::size_t rows = scan.patterns.size(), cols = scan.pins.size();
  const double cell = std::clamp(480.0 / static_cast<double>(std::max<std::size_t>(rows, 1)), 2.0, 24.0);
  const double cw = std::clamp(600.0 / static_cast<double>(std::max<std::size_t>(cols, 1)), 4.0, 48.0);
  const double w = 140 + cw * static_cast<double>(cols) + 40, h = 80 + cell * static_cast<double>(rows) + 40;
  Svg svg(w, h);
  svg.text_px(w / 2, 24, "window density ratio of D_x^{V_i}, pattern i by pin", 13, "middle");
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = std::clamp(scan.sets[a][j].window_ratio, 0.0, 1.0);
      char color[16];
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      std::snprintf(color, sizeof color, "#%02x%02xff", g, g);
      svg.rect_px(140 + cw * static_cast<double>(j), 60 + cell * static_cast<double>(a), cw - 1, cell - 1, color);
    }
    if (cell >= 10 || a == 0 || a + 1 == rows)
      svg.text_px(132, 60 + cell * static_cast<double>(a) + cell * 0.75, "i = " + std::to_string(scan.patterns[a]),
                  std::min(cell * 0.8, 11.0), "end");
  }
  if (scan.best >= 0)
    svg.text_px(w / 2, h - 12, "best pattern i = " + std::to_string(scan.patterns[static_cast<std::size_t>(scan.best)]),
                12, "middle");
  svg.write(path);
}

}  // namespace

int cmd_pinned_scan(const ExperimentConfig& cfg) {
  Stopwatch sw;
  ConeParameters cone_params;
  SolidCone cone;
  if (cfg.set.generator == "cone") {
    cone_params = cone_from_config(cfg);
    cone = cone_params.cone();
  }
  BuiltSet built;
  try {
    built = build_set(cfg, cfg.set.generator == "cone" ? &cone : nullptr);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(ErrorCode::ConfigError, std::string("input set: ") + e.what());
  }
  RunReport rep("pinned-scan", cfg);
  rep.time("build set", sw.seconds());
  Stopwatch scan_sw;
  const CatalogScan scan = run_catalog_scan(cfg, built.set, built.radius);
  rep.time("scan", scan_sw.seconds());

  CsvTable csv({"pattern_index", "pin_index", "r", "witness_angle", "density_ratio"});
  ojson patterns = ojson::array();
  std::uint64_t truncated = 0;
  for (std::size_t a = 0; a < scan.patterns.size(); ++a) {
    ojson pj;
    pj["index"] = scan.patterns[a];
    ojson ratios = ojson::array(), sups = ojson::array(), counts = ojson::array();
    for (std::size_t j = 0; j < scan.pins.size(); ++j) {
      const ScalingFactorSet& s = scan.sets[a][j];
      truncated += s.truncated;
      ratios.push_back(s.window_ratio);
      sups.push_back(s.density.sup_ratio);
      counts.push_back(s.scales.size());
      const std::string ia = std::to_string(scan.patterns[a]), ij = std::to_string(j);
      const std::string ratio = csv_number(s.window_ratio);
      if (s.empty()) csv.add({ia, ij, "", "", ratio});
      for (const auto& w : s.scales) csv.add({ia, ij, csv_number(w.r), csv_number(witness_angle(w.o)), ratio});
    }
    pj["window_ratio"] = std::move(ratios);
    pj["density_sup"] = std::move(sups);
    pj["scales"] = std::move(counts);
    pj["min_over_pins"] = scan.min_ratio[a];
    patterns.push_back(std::move(pj));
  }
  auto& res = rep.results();
  res["n_plus_1"] = scan.prime.prime;
  res["prime_source"] = prime_source_name(scan.prime.source);
  res["pitch"] = scan.pitch;
  res["tolerance"] = scan.tol;
  res["set_radius"] = scan.set_radius;
  res["set_points"] = scan.set_points;
  ojson pins = ojson::array();
  for (const auto& p : scan.pins) pins.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  res["pins"] = std::move(pins);
  res["r_min"] = scan.r_grid.front();
  res["r_max"] = scan.r_grid.back();
  res["r_count"] = scan.r_grid.size();
  res["patterns"] = std::move(patterns);
  res["best_pattern"] = scan.best >= 0 ? ojson(scan.patterns[static_cast<std::size_t>(scan.best)]) : ojson(nullptr);
  res["best_min_ratio"] = scan.best >= 0 ? scan.min_ratio[static_cast<std::size_t>(scan.best)] : 0.0;
  res["truncated_scales"] = truncated;

  if (scan.pins.empty())
    rep.check("positive_density_pattern", Verdict::warn, "the input set is empty; every ratio is 0");
  else if (scan.best < 0)
    rep.check("positive_density_pattern", Verdict::warn,
              "no scanned pattern has positive density at every pin (finite-scale observation)");
  else
    rep.check("positive_density_pattern", Verdict::pass,
              "pattern " + std::to_string(scan.patterns[static_cast<std::size_t>(scan.best)]) +
                  " has min-over-pins window ratio " + csv_number(scan.min_ratio[static_cast<std::size_t>(scan.best)]));
  if (truncated > 0)
    rep.check("search_complete", Verdict::warn, std::to_string(truncated) + " scales hit the search node limit");
  if (scan.prime.out_of_theory_window())
    rep.check("theory_prime_window", Verdict::warn,
              std::string("prime comes from the ") + prime_source_name(scan.prime.source) + " rule");

  ensure_dir(cfg.out);
  csv.write(cfg.out + "/pinned_scan.csv");
  heatmap_svg(scan, cfg.out + "/pinned_scan.svg");
  rep.write(cfg.out);
  return rep.exit_code();
}

}  // namespace pinpat::lab
