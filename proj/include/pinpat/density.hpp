#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pinpat/discretized_set.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat {

// Sorted, merged closed intervals on the line.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<std::pair<double, double>> intervals);
  // Each point x becomes [x - thickness, x + thickness].
  static IntervalUnion fattened(std::span<const double> points, double thickness);

  const std::vector<std::pair<double, double>>& intervals() const { return iv_; }
  double measure() const;
  double measure_in(double lo, double hi) const;

 private:
  std::vector<std::pair<double, double>> iv_;
};

struct Density1D {
  std::vector<double> radii;
  std::vector<double> ratios;  // L^1(S cap [0,R]) / R
  double sup_ratio = 0.0;
};

struct DensityND {
  int dim = 0;
  std::vector<double> radii;
  std::vector<std::uint64_t> counts;
  std::vector<double> ratios;  // count * h^d / R^d
  double sup_ratio = 0.0;
};

Density1D upper_density_1d(const IntervalUnion& s, std::span<const double> radii);
Density1D upper_density_1d(std::span<const double> points, double thickness, std::span<const double> radii);

DensityND upper_density_nd(const DiscretizedSet& a, std::span<const double> radii, Exec exec = Exec::parallel);

// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

}  // namespace pinpat
