#include <cmath>
#include <string>

#include "pinpat/density.hpp"
#include "pinpat/detector.hpp"
#include "pinpat/errors.hpp"
#include "pinpat/lab/commands.hpp"
#include "pinpat/lab/experiments.hpp"
#include "pinpat/lab/generators.hpp"
#include "pinpat/lab/output.hpp"

namespace pinpat::lab {

int cmd_distance_density(const ExperimentConfig& cfg) {
  Stopwatch sw;
  SolidCone cone;
  if (cfg.set.generator == "cone") cone = cone_from_config(cfg).cone();
  BuiltSet built;
  try {
    built = build_set(cfg, cfg.set.generator == "cone" ? &cone : nullptr);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(ErrorCode::ConfigError, std::string("input set: ") + e.what());
  }
  RunReport rep("distance-density", cfg);
  const DiscretizedSet& a = built.set;
  const int d = a.dim();

  // radii from rho/4 to rho, rho the set radius
  std::vector<double> radii;
  for (int i = 0; i < 8; ++i) radii.push_back(built.radius * (0.25 + 0.75 * i / 7.0));
  auto& res = rep.results();
  res["set_points"] = a.size();
  res["set_radius"] = built.radius;
  res["pitch"] = built.pitch;
  res["radii"] = radii;

  // a set of at most one point has zero density; the ratio is undefined
  const bool degenerate = a.size() <= 1;
  double delta_a = 0.0;
  if (!degenerate) delta_a = upper_density_nd(a, radii).sup_ratio;
  const double ball = unit_ball_volume(d);
  res["delta_a"] = delta_a;
  res["delta_a_ball_normalized"] = delta_a / ball;

  const double pin_radius = cfg.pin_radius > 0.0 ? cfg.pin_radius : built.radius / 4.0;
  const auto pins = sample_pins(a, cfg.pins, pin_radius, cfg.seed);
  ojson rows = ojson::array();
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const Point& x : pins) {
    double delta_d = 0.0;
    if (!degenerate) {
      const auto dist = pinned_distance_set(a, x);
      delta_d = upper_density_1d(dist, a.pitch() / 2.0, radii).sup_ratio;
    }
    ojson r;
    r["pin"] = std::vector<double>(x.coords().begin(), x.coords().end());
    r["delta_distance_set"] = delta_d;
    if (delta_a > 0.0) {
      r["ratio"] = delta_d / delta_a;
      r["ratio_ball_normalized"] = delta_d / (delta_a / ball);
      min_ratio = std::min(min_ratio, delta_d / delta_a);
    } else {
      r["ratio"] = nullptr;
      r["ratio_ball_normalized"] = nullptr;
    }
    rows.push_back(std::move(r));
  }
  res["pins"] = std::move(rows);
  rep.time("densities", sw.seconds());
  if (delta_a > 0.0 && !pins.empty())
    rep.check("distance_density_observed", Verdict::pass,
              "min ratio over pins " + csv_number(min_ratio) + " (observation, no constant asserted)");
  else
    rep.check("distance_density_observed", Verdict::warn, "density of the set is zero; ratio undefined");
  rep.write(cfg.out);
  return rep.exit_code();
}

}  // namespace pinpat::lab
