#include <string>

#include "pinpat/errors.hpp"
#include "pinpat/lab/commands.hpp"
#include "pinpat/lab/experiments.hpp"
#include "pinpat/lab/generators.hpp"
#include "pinpat/lab/output.hpp"
#include "pinpat/sphere.hpp"

namespace pinpat::lab {

int cmd_sphere_check(const ExperimentConfig& cfg) {
  for (int d : cfg.dims) require(d >= 2 && d <= 5, ErrorCode::ConfigError, "dims must lie in 2..5");
  require(cfg.nodes >= 2, ErrorCode::ConfigError, "nodes must be >= 2");
  require(cfg.sphere_radius > 0.0, ErrorCode::ConfigError, "sphere_radius must be positive");
  RunReport rep("sphere-check", cfg);
  Stopwatch sw;
  ojson rows = ojson::array();
  for (int d : cfg.dims) {
    const SphereReport s = sphere_measure_checks(d, cfg.nodes, cfg.sphere_radius);
    rows.push_back({{"d", d},
                    {"area", s.area},
                    {"area_exact", s.area_exact},
                    {"area_rel_err", s.area_rel_err},
                    {"ball", s.ball},
                    {"ball_exact", s.ball_exact},
                    {"ball_rel_err", s.ball_rel_err}});
    rep.check("sphere_area_d" + std::to_string(d), s.area_rel_err <= cfg.area_tolerance,
              "relative error " + csv_number(s.area_rel_err) + " vs " + csv_number(cfg.area_tolerance));
    rep.check("ball_volume_d" + std::to_string(d), s.ball_rel_err <= cfg.volume_tolerance,
              "relative error " + csv_number(s.ball_rel_err) + " vs " + csv_number(cfg.volume_tolerance));
  }
  rep.time("quadrature", sw.seconds());
  rep.results()["measures"] = std::move(rows);

  if (cfg.coarea) {
    // split of the set's mass about the first pin by membership of |y - x| in the catalog scaling union
    Stopwatch cs;
    SolidCone cone;
    if (cfg.set.generator == "cone") cone = cone_from_config(cfg).cone();
    const BuiltSet built = build_set(cfg, cfg.set.generator == "cone" ? &cone : nullptr);
    const CatalogScan scan = run_catalog_scan(cfg, built.set, built.radius);
    ojson split;
    if (scan.pins.empty()) {
      split = nullptr;
      rep.check("coarea_split", Verdict::warn, "the input set is empty");
    } else {
      std::vector<std::pair<double, double>> iv;
      for (const auto& per_pattern : scan.sets) {
        const auto u = IntervalUnion::fattened(per_pattern.front().radii(), per_pattern.front().r_pitch / 2.0);
        iv.insert(iv.end(), u.intervals().begin(), u.intervals().end());
      }
      const IntervalUnion d_union(std::move(iv));
      const double radius = scan.r_grid.back();
      const CoareaSplit c = coarea_split(built.set, scan.pins.front(), d_union, radius);
      split = {{"pin", std::vector<double>(scan.pins.front().coords().begin(), scan.pins.front().coords().end())},
               {"radius", c.radius},
               {"i1", c.i1},
               {"i2", c.i2},
               {"total", c.total},
               {"points", c.points},
               {"union_measure", d_union.measure_in(0.0, radius)},
               {"patterns", scan.patterns.size()}};
      rep.check("coarea_split", c.i1 + c.i2 == c.total ? Verdict::pass : Verdict::fail,
                "I1 + I2 partitions the set mass in B(x, R)");
    }
    rep.results()["coarea_split"] = std::move(split);
    rep.time("coarea", cs.seconds());
  }

  rep.write(cfg.out);
  return rep.exit_code();
}

}  // namespace pinpat::lab
