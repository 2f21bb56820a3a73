#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pinpat/catalog.hpp"
#include "pinpat/cone.hpp"
#include "pinpat/detector.hpp"
#include "pinpat/lab/config.hpp"
#include "pinpat/torus.hpp"
#include "pinpat/torus_ap.hpp"

namespace pinpat::lab {

// ---- circle avoiders ----

// Seeded greedy arc growth with local repair: propose arcs, halve any proposal
// that creates a rotated AP, then stretch the accepted arcs while they stay
// AP-free. Bounded by iteration count only.
TorusSet search_avoider(std::uint32_t n, int k, int iterations, std::mt19937_64& rng);
// Best of `restarts` searches (largest measure); restart j uses stream j.
TorusSet best_avoider(std::uint32_t n, int k, int restarts, int iterations, std::uint64_t seed);

// Adds shifted copies of a piece of e so that x, x + delta_i, ..., x + (k-2) delta_i
// all lie in the result for some x and some step i.
TorusSet plant_rotated_ap(const TorusSet& e, std::uint32_t n, int k, std::mt19937_64& rng);

TorusSet random_arc_union(std::mt19937_64& rng, int max_arcs = 8, double max_len = 1.5);

struct BridgeCheck {
  std::size_t cells = 0;
  std::size_t cells_with_ap = 0;
};
// Counts window cells whose slice holds a (k-1)-term AP.
BridgeCheck bridge_check(const TorusSet& e, std::uint32_t n, int k);

// ---- cone experiment ----

struct ConePin {
  Point pin;
  AngleThreshold threshold;
  std::vector<double> r_grid;
  MonteCarloReport monte_carlo;
  ScalingFactorSet copies;     // forbidden pattern, expected empty
  ScalingFactorSet abundance;  // catalog pattern, expected nonempty
  std::uint64_t brute_force_scales = 0;
  std::uint64_t brute_force_pairs = 0;  // near-copies among set points, expected 0
};

struct ConeRun {
  ConeParameters params;
  Pattern pattern;
  double alpha = 0.0;
  double pitch = 0.0;
  double tol = 0.0;
  double set_radius = 0.0;
  std::size_t set_points = 0;
  ConeDensity density;
  double density_target = 0.0;     // alpha'/2 in the plane, exact sector ratio otherwise
  double density_rel_err = 0.0;    // lattice ratio at the largest radius vs target
  PrimeChoice theory_prime;        // what the theorem's window would pick
  PrimeChoice prime;               // what the run used
  bool theory_window_overridden = false;
  Pattern catalog_v;
  std::vector<ConePin> pins;
};

// Pins on the axis at seeded distances in [1, 1.1], snapped to the lattice.
ConeRun run_cone_experiment(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

// Three-point pattern (pin, p1, p2): ordered pairs (y, y') of set points with
// ||y - x| - r|p1|| <= tol, ||y' - x| - r|p2|| <= tol and ||y - y'| - r|p1 - p2|| <= 2 tol.
// Any copy the detector can accept shows up here.
std::uint64_t brute_force_pairs(const DiscretizedSet& e, const PinnedView& view, const Pattern& v, double r,
                                double tol);

// ---- catalog scans ----

// prime_override when set, otherwise the theorem's rule; failures become ConfigError.
PrimeChoice config_prime(const ExperimentConfig& cfg);
// Cone of the configured pattern (alpha from its smallest angle unless given).
ConeParameters cone_from_config(const ExperimentConfig& cfg);

struct CatalogScan {
  PrimeChoice prime;
  double pitch = 0.0;
  double tol = 0.0;
  double set_radius = 0.0;
  std::size_t set_points = 0;
  std::vector<std::uint32_t> patterns;  // catalog indices scanned
  std::vector<Point> pins;
  std::vector<double> r_grid;
  std::vector<std::vector<ScalingFactorSet>> sets;  // [pattern][pin]
  std::vector<double> min_ratio;                    // per pattern, min over pins of window_ratio
  int best = -1;                                    // index into patterns, -1 if none is positive
};

// Relative r grids span [lo/hi, 1] times half the set radius.
CatalogScan run_catalog_scan(const ExperimentConfig& cfg, const DiscretizedSet& e, double set_radius,
                             Exec exec = Exec::parallel);

}  // namespace pinpat::lab
