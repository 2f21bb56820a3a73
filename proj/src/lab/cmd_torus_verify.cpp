#include <cmath>
#include <string>

#include "pinpat/errors.hpp"
#include "pinpat/lab/commands.hpp"
#include "pinpat/lab/experiments.hpp"
#include "pinpat/lab/output.hpp"

namespace pinpat::lab {

namespace {

ojson arcs_json(const TorusSet& e) {
  ojson a = ojson::array();
  for (const Arc& arc : e.arcs()) a.push_back({arc.lo, arc.hi});
  return a;
}

ojson witness_json(const TorusAP& w) {
  return {{"base", w.base}, {"step", w.step}, {"modulus", w.modulus}, {"length", w.length}};
}

}  // namespace

int cmd_torus_verify(const ExperimentConfig& cfg) {
  require(cfg.k >= 3, ErrorCode::ConfigError, "k must be >= 3");
  for (auto p : cfg.primes) {
    if (!is_prime(p)) fail(ErrorCode::ConfigError, "primes must be prime: " + std::to_string(p));
    require(p - 1 >= static_cast<std::uint32_t>(cfg.k), ErrorCode::ConfigError, "each prime needs n = p - 1 >= k");
  }
  RunReport rep("torus-verify", cfg);
  const int k = cfg.k;
  const Tolerances tol;
  ojson per = ojson::array();

  std::uint64_t measure_failures = 0, avoid_failures = 0, bridge_failures = 0, slicing_failures = 0;
  std::uint64_t perturb_total = 0, perturb_missed = 0, explicit_failures = 0;
  ojson measure_repro = nullptr, bridge_repro = nullptr, slicing_repro = nullptr, perturb_repro = nullptr;
  double worst_slicing = 0.0;

  for (std::size_t pi = 0; pi < cfg.primes.size(); ++pi) {
    const std::uint32_t n = cfg.primes[pi] - 1;
    const double w = kTwoPi / static_cast<double>(cfg.primes[pi]);
    ojson pj;
    pj["n_plus_1"] = cfg.primes[pi];

    // (a) seeded search, (b) verification
    Stopwatch sw;
    const TorusSet best = best_avoider(n, k, cfg.search_restarts, cfg.search_iterations, mix_seed(cfg.seed, pi));
    rep.time("search n+1=" + std::to_string(cfg.primes[pi]), sw.seconds());
    const auto wit = avoids_rotated_aps(best, n, k);
    pj["avoider_arcs"] = best.arcs().size();
    pj["avoider_measure"] = best.measure();
    if (wit) {
      ++avoid_failures;
      pj["verified"] = false;
    } else {
      pj["verified"] = true;
      const MeasureBound mb = measure_bound_check(best, n, k, tol);
      pj["measure_bound"] = mb.bound;
      pj["log_measure_bound"] = static_cast<double>(mb.log_bound);
      pj["fraction_of_bound"] = mb.bound > 0.0 ? mb.measure / mb.bound : 0.0;
      if (!mb.ok) {
        ++measure_failures;
        if (measure_repro.is_null()) measure_repro = {{"n_plus_1", cfg.primes[pi]}, {"arcs", arcs_json(best)}};
      }
      // (d) bridge on the avoider
      const BridgeCheck bc = bridge_check(best, n, k);
      pj["bridge_cells"] = bc.cells;
      if (bc.cells_with_ap != 0) {
        ++bridge_failures;
        if (bridge_repro.is_null()) bridge_repro = {{"n_plus_1", cfg.primes[pi]}, {"arcs", arcs_json(best)}};
      }
    }

    // explicit near-tight arc at 90% of the window
    {
      const TorusSet arc = TorusSet::arc(0.0, 0.9 * w);
      const bool ok = !avoids_rotated_aps(arc, n, k).has_value() && measure_bound_check(arc, n, k, tol).ok;
      pj["explicit_arc_accepted"] = ok;
      if (!ok) ++explicit_failures;
    }

    // (c) slicing identity on seeded random unions
    auto rng = make_rng(cfg.seed, 0x511ce + pi);
    double worst_here = 0.0;
    for (int t = 0; t < cfg.random_unions; ++t) {
      const TorusSet e = random_arc_union(rng);
      const SlicingIdentity s = slicing_identity_check(e, n, cfg.quadrature_points);
      const double err = std::abs(s.lhs - s.rhs);
      worst_here = std::max(worst_here, err);
      if (err > tol.slicing_identity) {
        ++slicing_failures;
        if (slicing_repro.is_null()) slicing_repro = {{"n_plus_1", cfg.primes[pi]}, {"arcs", arcs_json(e)}};
      }
    }
    worst_slicing = std::max(worst_slicing, worst_here);
    pj["slicing_max_error"] = worst_here;

    // perturbed near-avoiders must fail in tandem
    auto prng = make_rng(cfg.seed, 0x9e77 + pi);
    std::uint64_t missed_here = 0;
    for (int t = 0; t < cfg.perturbations; ++t) {
      const TorusSet e = plant_rotated_ap(best, n, k, prng);
      ++perturb_total;
      const auto w2 = avoids_rotated_aps(e, n, k);
      const BridgeCheck bc = bridge_check(e, n, k);
      if (!w2 || bc.cells_with_ap == 0) {
        ++missed_here;
        if (perturb_repro.is_null()) perturb_repro = {{"n_plus_1", cfg.primes[pi]}, {"arcs", arcs_json(e)}};
      }
    }
    perturb_missed += missed_here;
    pj["perturbations"] = cfg.perturbations;
    pj["perturbations_without_slice_ap"] = missed_here;
    per.push_back(std::move(pj));
  }

  // the rejected example: a half circle always holds a rotated AP
  {
    const TorusSet half = TorusSet::arc(0.0, kPi);
    const auto w = avoids_rotated_aps(half, 4, 3);
    rep.results()["half_circle_witness"] = w ? witness_json(*w) : ojson(nullptr);
    rep.check("half_circle_rejected", w.has_value(), "E = [0, pi], n + 1 = 5 must hold a rotated AP");
  }

  rep.results()["primes"] = std::move(per);
  rep.results()["slicing_max_error"] = worst_slicing;
  rep.check("avoiders_verified", avoid_failures == 0, std::to_string(avoid_failures) + " search results hold a rotated AP");
  rep.check("measure_bound", measure_failures == 0,
            std::to_string(measure_failures) + " avoiders exceed the measure bound", measure_repro);
  rep.check("explicit_arc_accepted", explicit_failures == 0,
            std::to_string(explicit_failures) + " explicit arcs at 90% of the window rejected");
  rep.check("slicing_identity", slicing_failures == 0,
            std::to_string(slicing_failures) + " unions off by more than " + csv_number(tol.slicing_identity),
            slicing_repro);
  rep.check("bridge_avoiders", bridge_failures == 0,
            std::to_string(bridge_failures) + " avoiders have a slice holding a (k-1)-AP", bridge_repro);
  rep.check("bridge_perturbed", perturb_missed == 0,
            std::to_string(perturb_missed) + " of " + std::to_string(perturb_total) +
                " perturbed sets lack a witness or a slice AP",
            perturb_repro);

  rep.write(cfg.out);
  return rep.exit_code();
}

}  // namespace pinpat::lab
