#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pinpat/density.hpp"
#include "pinpat/discretized_set.hpp"
#include "pinpat/kernels.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat {

struct ScalingFactorSet;

// {p : angle(p, axis) <= half_angle}, origin included.
struct SolidCone {
  int dim = 2;
  Point axis;
  double half_angle = 0.0;

  SolidCone() = default;
  SolidCone(int dim, double half_angle);                 // axis e1
  SolidCone(Point axis, double half_angle);
  double aperture() const { return 2.0 * half_angle; }  // alpha'
  bool axis_is_e1() const;
};

bool cone_contains(const SolidCone& c, const Point& p);
bool cone_contains(const SolidCone& c, std::span<const double> p);

// alpha' = alpha / (2^s d); the angle lemma is asserted at slack 2^t alpha'.
struct ConeParameters {
  double alpha = 0.0;
  int dim = 2;
  int shrink_exponent = kDefaultShrinkExponent;
  int slack_exponent = kDefaultSlackExponent;

  static ConeParameters make(double alpha, int dim, int shrink_exponent = kDefaultShrinkExponent,
                             int slack_exponent = kDefaultSlackExponent);
  double alpha_prime() const;
  double slack_angle() const;  // 2^t alpha'
  SolidCone cone() const;
};

struct ConeDensity {
  DensityND density;            // exact sector ratio for d = 2, lattice counts for d >= 3
  DensityND lattice;            // lattice-counted ratios (all d)
  std::vector<double> exact;    // exact spherical-sector ratio per R
  double floor = 0.0;           // c * alpha'^{d-1}
  bool meets_floor = false;
};

// Exact ratio L^d(C cap B(0,R)) / R^d, independent of R.
double cone_sector_ratio(int dim, double half_angle);
// Small-angle constant K_d with ratio ~ K_d alpha'^{d-1}.
double cone_small_angle_constant(int dim);

ConeDensity cone_density(const SolidCone& c, std::span<const double> radii, double pitch,
                         double floor_fraction = 0.5, Exec exec = Exec::parallel);

// Lattice points of pitch h inside C cap B(0, radius); thickness < 0 gives h/2.
DiscretizedSet discretize_cone(const SolidCone& c, double radius, double pitch, double thickness = -1.0,
                               Exec exec = Exec::parallel);

struct AngleThreshold {
  double m = 0.0;         // certified threshold M(x, alpha')
  bool apex = false;      // x is the apex: every scale works, with bound alpha'
  double bound = 0.0;     // angle bound asserted beyond M (2^t alpha', or alpha' at the apex)
  double scale_radius() const { return 2.0 * m; }  // R(x)
};

// Closed-form certified M; see the derivation in cone.cpp.
AngleThreshold angle_lemma_threshold(const SolidCone& c, const Point& x, int slack_exponent);

struct MonteCarloReport {
  kernels::AngleSample sample;
  double threshold = 0.0;
  double bound = 0.0;
  bool passed() const { return sample.violations == 0; }
};

MonteCarloReport angle_lemma_monte_carlo(const SolidCone& c, const Point& x, double threshold, double bound,
                                         std::uint64_t samples, std::uint64_t seed, Exec exec = Exec::parallel);

// Smallest threshold (within rel_tol) the falsifier cannot break; reported only.
double tighten_threshold(const SolidCone& c, const Point& x, int slack_exponent, std::uint64_t samples,
                         std::uint64_t seed, int iterations = 30);

ScalingFactorSet scan_pinned_copies(const DiscretizedSet& e, const Point& x, const Pattern& v,
                                    std::span<const double> r_grid, double tol, Exec exec = Exec::parallel);

}  // namespace pinpat
