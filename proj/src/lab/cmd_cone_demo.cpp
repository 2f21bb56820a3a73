#include <algorithm>
#include <cmath>
#include <string>

#include "pinpat/errors.hpp"
#include "pinpat/lab/commands.hpp"
#include "pinpat/lab/experiments.hpp"
#include "pinpat/lab/output.hpp"

namespace pinpat::lab {

namespace {

ojson point_json(const Point& p) { return std::vector<double>(p.coords().begin(), p.coords().end()); }

ojson prime_json(const PrimeChoice& p) {
  return {{"n_plus_1", p.prime}, {"source", prime_source_name(p.source)}, {"window_lo", p.window_lo},
          {"window_hi", std::isfinite(p.window_hi) ? ojson(p.window_hi) : ojson(nullptr)}};
}

// The cone is far thinner than it is long, so the plot stretches the
// transverse axis; the stretch factor is printed on the figure.
void cone_svg(const ConeRun& run, const std::string& path) {
  const double len = run.set_radius;
  const double half = run.params.cone().half_angle;
  const double ymax = len * std::tan(half) * 1.25;
  Svg svg(900, 360);
  svg.window(0.0, len, -ymax, ymax, 50);
  svg.polygon({{0.0, 0.0}, {len, len * std::tan(half)}, {len, -len * std::tan(half)}}, "#9ecae1", 0.8);
  if (!run.pins.empty()) {
    const ConePin& p = run.pins.front();
    const double x0 = p.pin[0];
    for (double r : {p.r_grid.front(), p.r_grid.back()}) {
      // annulus boundary, traced in true coordinates then drawn with the stretch
      std::vector<std::pair<double, double>> arc;
      for (int i = 0; i <= 64; ++i) {
        const double t = -std::atan2(ymax, r) + 2.0 * std::atan2(ymax, r) * i / 64.0;
        arc.emplace_back(x0 + r * std::cos(t), r * std::sin(t));
      }
      svg.polyline(arc, "#d62728", 1.2);
    }
    svg.circle(x0, 0.0, 4.0, "#000000");
  }
  svg.axes("distance along the axis", "");
  char buf[200];
  std::snprintf(buf, sizeof buf, "planar cone, aperture %.6g rad; transverse axis stretched x%.3g", 2.0 * half,
                len / (2.0 * ymax) * (360.0 - 100.0) / (900.0 - 100.0));
  svg.text_px(450, 24, buf, 13, "middle");
  svg.text_px(450, 344, "red: first and last scanned radius about the first pin (black)", 11, "middle");
  svg.write(path);
}

}  // namespace

int cmd_cone_demo(const ExperimentConfig& cfg) {
  require(cfg.set.generator == "cone", ErrorCode::ConfigError, "cone-demo builds its own cone set");
  Stopwatch total;
  const ConeRun run = run_cone_experiment(cfg);
  RunReport rep("cone-demo", cfg);
  rep.time("experiment", total.seconds());

  auto& res = rep.results();
  res["alpha"] = run.alpha;
  res["alpha_prime"] = run.params.alpha_prime();
  res["slack_angle"] = run.params.slack_angle();
  res["pitch"] = run.pitch;
  res["tolerance"] = run.tol;
  res["set_radius"] = run.set_radius;
  res["set_points"] = run.set_points;
  res["density"] = {{"radii", run.density.lattice.radii},
                    {"lattice_ratios", run.density.lattice.ratios},
                    {"exact_ratios", run.density.exact},
                    {"target", run.density_target},
                    {"relative_error", run.density_rel_err},
                    {"floor", run.density.floor}};
  res["theory_prime"] = prime_json(run.theory_prime);
  res["catalog_prime"] = prime_json(run.prime);
  res["theory_window_overridden"] = run.theory_window_overridden;

  ojson pins = ojson::array();
  std::uint64_t copies = 0, mc_violations = 0, brute = 0, empty_abundance = 0;
  ojson copy_repro = nullptr, mc_repro = nullptr, abundance_repro = nullptr;
  for (std::size_t j = 0; j < run.pins.size(); ++j) {
    const ConePin& p = run.pins[j];
    ojson pj;
    pj["pin"] = point_json(p.pin);
    pj["threshold_m"] = p.threshold.m;
    pj["scale_radius"] = p.threshold.scale_radius();
    pj["angle_bound"] = p.threshold.bound;
    pj["r_min"] = p.r_grid.front();
    pj["r_max"] = p.r_grid.back();
    pj["monte_carlo"] = {{"samples", p.monte_carlo.sample.samples},
                         {"violations", p.monte_carlo.sample.violations},
                         {"max_angle", p.monte_carlo.sample.max_angle}};
    pj["copies_found"] = p.copies.scales.size();
    pj["brute_force_scales"] = p.brute_force_scales;
    pj["brute_force_pairs"] = p.brute_force_pairs;
    pj["abundance_scales"] = p.abundance.scales.size();
    pj["abundance_window_ratio"] = p.abundance.window_ratio;
    pj["abundance_density_sup"] = p.abundance.density.sup_ratio;
    pins.push_back(std::move(pj));

    copies += p.copies.scales.size();
    brute += p.brute_force_pairs;
    mc_violations += p.monte_carlo.sample.violations;
    if (!p.copies.scales.empty() && copy_repro.is_null()) {
      const auto& s = p.copies.scales.front();
      copy_repro = {{"pin", point_json(p.pin)}, {"r", s.r}, {"isometry", s.o.matrix()}, {"residual", s.residual}};
    }
    if (p.monte_carlo.sample.violations != 0 && mc_repro.is_null())
      mc_repro = {{"pin", point_json(p.pin)},
                  {"y", p.monte_carlo.sample.worst_y},
                  {"y2", p.monte_carlo.sample.worst_y2},
                  {"angle", p.monte_carlo.sample.max_angle}};
    if (p.abundance.empty() || p.abundance.window_ratio <= 0.0) {
      ++empty_abundance;
      if (abundance_repro.is_null()) abundance_repro = {{"pin", point_json(p.pin)}};
    }
  }
  res["pins"] = std::move(pins);

  rep.check("no_copies_beyond_scale_radius", copies == 0,
            std::to_string(copies) + " pinned copies found at r >= R(x)", copy_repro);
  rep.check("brute_force_no_near_copies", brute == 0,
            std::to_string(brute) + " point pairs complete the pattern within tolerance");
  rep.check("angle_lemma_monte_carlo", mc_violations == 0,
            std::to_string(mc_violations) + " sampled pairs exceed the angle bound", mc_repro);
  rep.check("cone_density", run.density_rel_err <= 0.02,
            "lattice ratio vs exact sector ratio, relative error " + csv_number(run.density_rel_err));
  rep.check("catalog_abundance", empty_abundance == 0,
            std::to_string(empty_abundance) + " pins with an empty catalog scaling set", abundance_repro);
  if (run.theory_window_overridden)
    rep.check("theory_prime_window", Verdict::warn,
              "catalog prime " + std::to_string(run.prime.prime) + " replaces the theorem's window prime " +
                  std::to_string(run.theory_prime.prime) + " so that 2 pi/(n+1) < alpha'");

  ensure_dir(cfg.out);
  cone_svg(run, cfg.out + "/cone_demo.svg");
  rep.write(cfg.out);
  return rep.exit_code();
}

}  // namespace pinpat::lab
