#include "pinpat/lab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pinpat/errors.hpp"
#include "pinpat/lab/generators.hpp"

namespace pinpat::lab {

namespace {

bool avoids(const TorusSet& e, std::uint32_t n, int k) { return !avoids_rotated_aps(e, n, k).has_value(); }

}  // namespace

TorusSet search_avoider(std::uint32_t n, int k, int iterations, std::mt19937_64& rng) {
  const double w = kTwoPi / (static_cast<double>(n) + 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TorusSet e;
  for (int it = 0; it < iterations; ++it) {
    const double lo = kTwoPi * u(rng);
    double len = w * (0.02 + 0.48 * u(rng));
    for (int repair = 0; repair < 6; ++repair, len *= 0.5) {
      const TorusSet cand = e.unite(TorusSet::arc(lo, lo + len));
      if (avoids(cand, n, k)) {
        e = cand;
        break;
      }
    }
  }
  // stretch each arc to the right while the set stays AP-free
  for (int pass = 0; pass < 2; ++pass) {
    const auto arcs = e.arcs();
    for (const Arc& a : arcs) {
      double step = w * 0.05;
      double hi = a.hi;
      for (int tries = 0; tries < 24 && step > w * 1e-6; ++tries) {
        const TorusSet cand = e.unite(TorusSet::arc(hi, hi + step));
        if (avoids(cand, n, k)) {
          e = cand;
          hi += step;
        } else {
          step *= 0.5;
        }
      }
    }
  }
  return e;
}

TorusSet best_avoider(std::uint32_t n, int k, int restarts, int iterations, std::uint64_t seed) {
  TorusSet best;
  for (int j = 0; j < restarts; ++j) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(j));
    TorusSet e = search_avoider(n, k, iterations, rng);
    if (e.measure() > best.measure()) best = std::move(e);
  }
  return best;
}

TorusSet plant_rotated_ap(const TorusSet& e, std::uint32_t n, int k, std::mt19937_64& rng) {
  const double w = kTwoPi / (static_cast<double>(n) + 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> step(1, n);
  double lo, len;
  if (e.empty()) {
    lo = kTwoPi * u(rng);
    len = w * 0.1;
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, e.arcs().size() - 1);
    const Arc a = e.arcs()[pick(rng)];
    len = std::min(a.length(), w * 0.25) * (0.25 + 0.75 * u(rng));
    lo = a.lo + (a.length() - len) * u(rng);
  }
  const std::uint32_t i = step(rng);
  TorusSet out = e.unite(TorusSet::arc(lo, lo + len));
  for (int j = 1; j <= k - 2; ++j) {
    const std::uint64_t r = (static_cast<std::uint64_t>(j) * i) % (static_cast<std::uint64_t>(n) + 1);
    const double shift = w * static_cast<double>(r);
    out = out.unite(TorusSet::arc(lo + shift, lo + shift + len));
  }
  return out;
}

TorusSet random_arc_union(std::mt19937_64& rng, int max_arcs, double max_len) {
  std::uniform_int_distribution<int> count(1, max_arcs);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Arc> arcs;
  const int m = count(rng);
  for (int j = 0; j < m; ++j) {
    const double lo = kTwoPi * u(rng);
    arcs.push_back({lo, lo + max_len * u(rng)});
  }
  return TorusSet::from_arcs(arcs);
}

BridgeCheck bridge_check(const TorusSet& e, std::uint32_t n, int k) {
  BridgeCheck b;
  for (const auto& cell : window_cells(e, n)) {
    ++b.cells;
    if (has_ap(cell.slice, k - 1)) ++b.cells_with_ap;
  }
  return b;
}

std::uint64_t brute_force_pairs(const DiscretizedSet& e, const PinnedView& view, const Pattern& v, double r,
                                double tol) {
  require(v.size() == 3, ErrorCode::BadLength, "brute force covers three-point patterns");
  const double n1 = v[1].norm(), n2 = v[2].norm(), side = distance(v[1], v[2]);
  const auto a1 = view.annulus(r * n1 - tol, r * n1 + tol);
  const auto a2 = view.annulus(r * n2 - tol, r * n2 + tol);
  std::uint64_t count = 0;
  for (std::uint32_t i : a1)
    for (std::uint32_t j : a2) {
      if (i == j) continue;
      if (std::abs(distance(e.point(i), e.point(j)) - r * side) <= 2.0 * tol) ++count;
    }
  return count;
}

ConeRun run_cone_experiment(const ExperimentConfig& cfg, Exec exec) {
  ConeRun run;
  run.pattern = config_pattern(cfg);
  run.params = cone_from_config(cfg);
  run.alpha = run.params.alpha;
  const SolidCone cone = run.params.cone();
  const double ap = run.params.alpha_prime();

  // pins on the axis at |x| in [1, 1.1]
  auto rng = make_rng(cfg.seed, 0xc0e);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> radii(static_cast<std::size_t>(cfg.pins));
  for (auto& r : radii) r = 1.0 + 0.1 * u(rng);
  const double rmin = *std::min_element(radii.begin(), radii.end());
  run.pitch = cfg.pitch > 0.0 ? cfg.pitch : ap * rmin / cfg.pitch_factor;
  run.tol = cfg.tol > 0.0 ? cfg.tol : run.pitch;

  double vmax = 0.0;
  for (const auto& p : run.pattern.points()) vmax = std::max(vmax, p.norm());

  // scale windows and the set radius they need
  double need = 0.0;
  for (double rad : radii) {
    ConePin pin;
    std::vector<double> c(static_cast<std::size_t>(cfg.d), 0.0);
    c[0] = std::round(rad / run.pitch) * run.pitch;
    pin.pin = Point(std::move(c));
    pin.threshold = angle_lemma_threshold(cone, pin.pin, cfg.slack_exponent);
    const double big_r = pin.threshold.scale_radius();
    const double lo = cfg.r_grid.mode == "relative" ? cfg.r_grid.lo * big_r : cfg.r_grid.lo;
    const double hi = cfg.r_grid.mode == "relative" ? cfg.r_grid.hi * big_r : cfg.r_grid.hi;
    pin.r_grid = linear_grid(lo, hi, cfg.r_grid.count);
    need = std::max(need, pin.pin.norm() + hi * std::max(vmax, 1.0) + 2.0 * run.tol);
    run.pins.push_back(std::move(pin));
  }
  run.set_radius = cfg.set.radius > 0.0 ? cfg.set.radius : need + 2.0 * run.pitch;
  const DiscretizedSet e = discretize_cone(cone, run.set_radius, run.pitch, -1.0, exec);
  run.set_points = e.size();

  const std::vector<double> dens_r{run.set_radius / 4.0, run.set_radius / 2.0, run.set_radius};
  run.density = cone_density(cone, dens_r, run.pitch, 0.5, exec);
  run.density_target = cfg.d == 2 ? ap / 2.0 : cone_sector_ratio(cfg.d, cone.half_angle);
  run.density_rel_err = std::abs(run.density.lattice.ratios.back() - run.density_target) / run.density_target;

  // catalog prime: the theorem's window when its step angle undercuts alpha', else the override
  bool theory_ok = false;
  try {
    run.theory_prime = select_prime(cfg.k, cfg.d, cfg.epsilon0, cfg.c_d);
    theory_ok = kTwoPi / static_cast<double>(run.theory_prime.prime) < ap;
  } catch (const Error&) {
    run.theory_prime = PrimeChoice{};
  }
  if (cfg.prime_override != 0) {
    require(is_prime(cfg.prime_override), ErrorCode::ConfigError, "prime_override must be prime");
    run.prime.prime = cfg.prime_override;
    run.prime.source = PrimeSource::Override;
  } else if (theory_ok) {
    run.prime = run.theory_prime;
  } else {
    run.prime = override_prime_for_angle(ap);
  }
  run.theory_window_overridden = run.prime.out_of_theory_window();
  run.catalog_v = catalog_pattern(1, cfg.k, run.prime.n(), cfg.d);

  for (std::size_t j = 0; j < run.pins.size(); ++j) {
    ConePin& pin = run.pins[j];
    pin.monte_carlo = angle_lemma_monte_carlo(cone, pin.pin, pin.threshold.m, pin.threshold.bound, cfg.mc_samples,
                                              mix_seed(cfg.seed, 1000 + j), exec);
    pin.copies = scan_pinned_copies(e, pin.pin, run.pattern, pin.r_grid, run.tol, exec);
    pin.copies.pattern_id = "V";
    pin.abundance = pinned_scaling_set(e, pin.pin, run.catalog_v, pin.r_grid, run.tol, DetectorOptions{}, exec,
                                       "V_1^" + std::to_string(cfg.k));
    if (run.pattern.size() == 3 && cfg.brute_force_stride > 0) {
      const PinnedView view(e, pin.pin);
      for (std::size_t i = 0; i < pin.r_grid.size(); i += static_cast<std::size_t>(cfg.brute_force_stride)) {
        ++pin.brute_force_scales;
        pin.brute_force_pairs += brute_force_pairs(e, view, run.pattern, pin.r_grid[i], run.tol);
      }
    }
  }
  return run;
}

PrimeChoice config_prime(const ExperimentConfig& cfg) {
  if (cfg.prime_override != 0) {
    require(is_prime(cfg.prime_override), ErrorCode::ConfigError, "prime_override must be prime");
    PrimeChoice p;
    p.prime = cfg.prime_override;
    p.source = PrimeSource::Override;
    return p;
  }
  try {
    return select_prime(cfg.k, cfg.d, cfg.epsilon0, cfg.c_d);
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, std::string("no catalog prime: ") + e.what());
  }
}

ConeParameters cone_from_config(const ExperimentConfig& cfg) {
  try {
    const double alpha = cfg.alpha > 0.0 ? cfg.alpha : smallest_angle(config_pattern(cfg));
    return ConeParameters::make(alpha, cfg.d, cfg.shrink_exponent, cfg.slack_exponent);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(ErrorCode::ConfigError, std::string("cone parameters rejected: ") + e.what());
  }
}

CatalogScan run_catalog_scan(const ExperimentConfig& cfg, const DiscretizedSet& e, double set_radius, Exec exec) {
  require(cfg.k >= 3, ErrorCode::ConfigError, "k must be >= 3");
  CatalogScan scan;
  scan.prime = config_prime(cfg);
  require(scan.prime.n() >= static_cast<std::uint32_t>(cfg.k), ErrorCode::ConfigError, "catalog needs n >= k");
  scan.pitch = e.pitch();
  scan.tol = cfg.tol > 0.0 ? cfg.tol : e.pitch();
  scan.set_radius = set_radius;
  scan.set_points = e.size();
  const std::uint32_t n = scan.prime.n();
  const std::uint32_t count = cfg.pattern_limit > 0 ? std::min<std::uint32_t>(n, static_cast<std::uint32_t>(cfg.pattern_limit)) : n;
  for (std::uint32_t i = 1; i <= count; ++i) scan.patterns.push_back(i);
  const double pin_radius = cfg.pin_radius > 0.0 ? cfg.pin_radius : set_radius / 4.0;
  scan.pins = sample_pins(e, cfg.pins, pin_radius, cfg.seed);
  if (cfg.r_grid.mode == "relative") {
    const double top = set_radius / 2.0;
    scan.r_grid = linear_grid(top * cfg.r_grid.lo / cfg.r_grid.hi, top, cfg.r_grid.count);
  } else {
    scan.r_grid = linear_grid(cfg.r_grid.lo, cfg.r_grid.hi, cfg.r_grid.count);
  }
  scan.sets.resize(scan.patterns.size());
  scan.min_ratio.assign(scan.patterns.size(), 0.0);
  double best = 0.0;
  for (std::size_t a = 0; a < scan.patterns.size(); ++a) {
    const Pattern v = catalog_pattern(scan.patterns[a], cfg.k, n, cfg.d);
    double lo = scan.pins.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (const Point& x : scan.pins) {
      scan.sets[a].push_back(pinned_scaling_set(e, x, v, scan.r_grid, scan.tol, DetectorOptions{}, exec,
                                                "V_" + std::to_string(scan.patterns[a]) + "^" + std::to_string(cfg.k)));
      lo = std::min(lo, scan.sets[a].back().window_ratio);
    }
    scan.min_ratio[a] = lo;
    if (lo > best) {
      best = lo;
      scan.best = static_cast<int>(a);
    }
  }
  return scan;
}

}  // namespace pinpat::lab
