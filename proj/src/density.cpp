#include "pinpat/density.hpp"

#include <algorithm>
#include <cmath>

#include "pinpat/errors.hpp"
#include "pinpat/kernels.hpp"

namespace pinpat {

IntervalUnion::IntervalUnion(std::vector<std::pair<double, double>> intervals) {
  for (const auto& [a, b] : intervals)
    require(std::isfinite(a) && std::isfinite(b) && a <= b, ErrorCode::InvalidArgument, "bad interval");
  std::sort(intervals.begin(), intervals.end());
  for (const auto& iv : intervals) {
    if (!iv_.empty() && iv.first <= iv_.back().second)
      iv_.back().second = std::max(iv_.back().second, iv.second);
    else
      iv_.push_back(iv);
  }
}

IntervalUnion IntervalUnion::fattened(std::span<const double> points, double thickness) {
  require(thickness >= 0.0, ErrorCode::InvalidArgument, "thickness must be non-negative");
  std::vector<std::pair<double, double>> iv;
  iv.reserve(points.size());
  for (double x : points) iv.emplace_back(x - thickness, x + thickness);
  return IntervalUnion(std::move(iv));
}

double IntervalUnion::measure() const {
  double s = 0.0;
  for (const auto& [a, b] : iv_) s += b - a;
  return s;
}

double IntervalUnion::measure_in(double lo, double hi) const {
  double s = 0.0;
  for (const auto& [a, b] : iv_) {
    const double l = std::max(a, lo), r = std::min(b, hi);
    if (r > l) s += r - l;
  }
  return s;
}

namespace {
void check_radii(std::span<const double> radii) {
  require(!radii.empty(), ErrorCode::EmptyRadiusList, "radius list is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && std::isfinite(radii[i]), ErrorCode::InvalidArgument, "radii must be positive");
    if (i > 0) require(radii[i] > radii[i - 1], ErrorCode::InvalidArgument, "radii must be increasing");
  }
}
}  // namespace

Density1D upper_density_1d(const IntervalUnion& s, std::span<const double> radii) {
  check_radii(radii);
  Density1D out;
  out.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    const double ratio = s.measure_in(0.0, r) / r;
    out.ratios.push_back(ratio);
    out.sup_ratio = std::max(out.sup_ratio, ratio);
  }
  return out;
}

Density1D upper_density_1d(std::span<const double> points, double thickness, std::span<const double> radii) {
  return upper_density_1d(IntervalUnion::fattened(points, thickness), radii);
}

DensityND upper_density_nd(const DiscretizedSet& a, std::span<const double> radii, Exec exec) {
  check_radii(radii);
  DensityND out;
  out.dim = a.dim();
  out.radii.assign(radii.begin(), radii.end());
  out.counts = exec == Exec::serial ? kernels::radial_count_serial(a.flat(), a.dim(), radii)
                                    : kernels::radial_count_omp(a.flat(), a.dim(), radii);
  const double cell = std::pow(a.pitch(), a.dim());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double ratio = static_cast<double>(out.counts[i]) * cell / std::pow(radii[i], a.dim());
    out.ratios.push_back(ratio);
    out.sup_ratio = std::max(out.sup_ratio, ratio);
  }
  return out;
}

double unit_ball_volume(int d) {
  return std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

}  // namespace pinpat
