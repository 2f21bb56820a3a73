#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinpat/density.hpp"
#include "pinpat/discretized_set.hpp"
#include "pinpat/geometry.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat {

struct DetectorOptions {
  enum class Path { automatic, fast_only, generic_only };
  Path path = Path::automatic;
  // d >= 3 circle sweep: angles per slice coordinate; 0 picks ceil(pi r / eta).
  int slices_per_angle = 0;
  int max_slices_per_angle = 2048;
  // Generic path search nodes per scale; 0 means unlimited. Hitting the limit
  // marks the scale as truncated instead of silently rejecting it.
  std::uint64_t generic_node_limit = 0;
};

struct ScaleWitness {
  double r = 0.0;
  Isometry o;
  double residual = 0.0;  // max_j dist(x + r O p_j, E)
};

struct ScalingFactorSet {
  Point pin;
  std::string pattern_id;
  std::vector<ScaleWitness> scales;  // sorted by r
  std::vector<double> r_grid;
  double tolerance = 0.0;
  double set_pitch = 0.0;
  double r_pitch = 0.0;
  Density1D density;          // over R in the scanned grid, thickness r_pitch / 2
  double window_ratio = 0.0;  // L^1(D cap [r_min, r_max]) / (r_max - r_min)
  std::uint64_t truncated = 0;

  std::vector<double> radii() const;
  bool empty() const { return scales.empty(); }
};

// Points of E sorted by distance from a fixed pin.
class PinnedView {
 public:
  PinnedView(const DiscretizedSet& e, const Point& x);
  // Indices into E with |e - x| in [lo, hi], in increasing distance.
  std::span<const std::uint32_t> annulus(double lo, double hi) const;
  std::span<const double> distances() const { return dist_; }

 private:
  std::vector<double> dist_;
  std::vector<std::uint32_t> idx_;
};

// Decides x + r O(V) subset of E (within tol) for a fixed (E, x, V).
class PinnedDetector {
 public:
  PinnedDetector(const DiscretizedSet& e, const Point& x, const Pattern& v, double tol, DetectorOptions opts = {});

  struct Result {
    std::optional<Isometry> witness;
    double residual = 0.0;
    bool truncated = false;
  };

  Result find(double r) const;
  std::optional<Isometry> occurs(double r) const { return find(r).witness; }

  bool fast_path_eligible() const { return circle_; }
  double residual(const Isometry& o, double r) const;
  const Pattern& pattern() const { return v_; }
  double tolerance() const { return tol_; }

 private:
  struct Planar {
    std::vector<double> angle;         // sorted
    std::vector<std::uint32_t> index;  // E index per angle
  };
  Result fast_planar(double r, const Planar& ring, const std::vector<double>& u, const std::vector<double>& w) const;
  Result fast_search(double r) const;
  Result generic_search(double r) const;
  Result accept(const Isometry& o, double r) const;

  const DiscretizedSet& e_;
  Point x_;
  Pattern v_;
  double tol_;
  DetectorOptions opts_;
  PinnedView view_;
  int d_;
  // circle geometry of the pattern
  bool circle_ = false;
  int rank_ = 0;
  double rho_ = 0.0;                 // common norm of the non-pin points
  std::vector<double> frame_;        // column-major d x d, first two columns span the pattern plane
  std::vector<double> beta_;         // in-plane angle of each non-pin point (beta_[0] = 0)
  std::vector<double> norms_;        // |p_j| for j >= 1
};

std::optional<Isometry> occurs_at(const DiscretizedSet& e, const Point& x, const Pattern& v, double r, double tol,
                                  const DetectorOptions& opts = {});

ScalingFactorSet pinned_scaling_set(const DiscretizedSet& e, const Point& x, const Pattern& v,
                                    std::span<const double> r_grid, double tol, const DetectorOptions& opts = {},
                                    Exec exec = Exec::parallel, const std::string& pattern_id = "");

// Distances |x - y|, y in A, sorted and merged within pitch / 4.
std::vector<double> pinned_distance_set(const DiscretizedSet& a, const Point& x);

// Rotation in the common plane taking U to W when their consecutive angular
// gaps agree; none otherwise.
std::optional<Isometry> match_equal_gap(const std::vector<Point>& u, const std::vector<Point>& w,
                                        const Tolerances& tol = kTolerances);

}  // namespace pinpat
