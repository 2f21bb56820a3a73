#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pinpat/geometry.hpp"

namespace pinpat {

// Uniform bucket grid over a flat point array. Cells are keyed by integer
// coordinates floor(p / edge) and stored sorted, so a ball query touches
// only the cells overlapping the ball's bounding box.
class SpatialIndex {
 public:
  SpatialIndex() = default;
  SpatialIndex(int dim, std::span<const double> flat, double edge);

  double edge() const { return edge_; }
  std::size_t cell_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  // Calls f(index) for every stored point with |p - c| <= radius.
  template <class F>
  void for_each_in_ball(std::span<const double> flat, const double* c, double radius, F&& f) const;

 private:
  int compare_key(std::size_t cell, const std::int64_t* key) const;
  std::size_t lower_bound(const std::int64_t* key) const;

  int d_ = 0;
  double edge_ = 1.0;
  std::vector<std::int64_t> keys_;      // cell_count * d
  std::vector<std::uint32_t> offsets_;  // cell_count + 1
  std::vector<std::uint32_t> order_;    // point indices grouped by cell
};

// Finite point cloud standing in for a subset of R^d. Membership of p means
// some stored point lies within thickness (eta) of p.
class DiscretizedSet {
 public:
  DiscretizedSet() = default;
  // thickness < 0 selects the default pitch / 2.
  DiscretizedSet(int dim, std::vector<double> flat, double pitch, double thickness = -1.0);
  static DiscretizedSet from_points(const std::vector<Point>& pts, double pitch, double thickness = -1.0);

  int dim() const { return d_; }
  std::size_t size() const { return d_ == 0 ? 0 : flat_.size() / static_cast<std::size_t>(d_); }
  bool empty() const { return size() == 0; }
  double pitch() const { return h_; }
  double thickness() const { return eta_; }
  double bounding_radius() const { return bound_; }
  std::span<const double> flat() const { return flat_; }
  std::span<const double> point(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  Point point_at(std::size_t i) const;
  const SpatialIndex& index() const { return index_; }

  bool contains(const double* p) const;
  bool contains(const Point& p) const;
  // Distance to the nearest stored point, or +inf if none lies within radius.
  double nearest_distance(const double* p, double radius) const;
  double nearest_distance(const Point& p, double radius) const;
  std::vector<std::uint32_t> query_ball(const Point& c, double radius) const;
  void query_ball(const double* c, double radius, std::vector<std::uint32_t>& out) const;

  // Image under p -> shift + scale * O(p); pitch and thickness scale too.
  DiscretizedSet mapped(const Isometry& o, const Point& shift, double scale = 1.0) const;
  DiscretizedSet translated(const Point& shift) const;

 private:
  int d_ = 0;
  std::vector<double> flat_;
  double h_ = 1.0;
  double eta_ = 0.5;
  double bound_ = 0.0;
  SpatialIndex index_;
};

template <class F>
void SpatialIndex::for_each_in_ball(std::span<const double> flat, const double* c, double radius, F&& f) const {
  if (cell_count() == 0 || radius < 0.0) return;
  const double r2 = radius * radius;
  const std::size_t d = static_cast<std::size_t>(d_);
  std::int64_t lo[kMaxDim], hi[kMaxDim];
  double box = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = static_cast<std::int64_t>(std::floor((c[i] - radius) / edge_));
    hi[i] = static_cast<std::int64_t>(std::floor((c[i] + radius) / edge_));
    box *= static_cast<double>(hi[i] - lo[i] + 1);
  }
  auto scan_cell = [&](std::size_t cell) {
    for (std::uint32_t k = offsets_[cell]; k < offsets_[cell + 1]; ++k) {
      const std::uint32_t idx = order_[k];
      const double* p = flat.data() + static_cast<std::size_t>(idx) * d;
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double t = p[i] - c[i];
        s += t * t;
      }
      if (s <= r2) f(idx);
    }
  };
  const std::size_t ncell = cell_count();
  if (box >= static_cast<double>(ncell)) {
    for (std::size_t cell = 0; cell < ncell; ++cell) {
      const std::int64_t* key = keys_.data() + cell * d;
      bool inside = true;
      for (std::size_t i = 0; i < d && inside; ++i) inside = key[i] >= lo[i] && key[i] <= hi[i];
      if (inside) scan_cell(cell);
    }
    return;
  }
  // walk prefixes of the first d-1 coordinates; the last one is a range scan
  std::int64_t cur[kMaxDim];
  for (std::size_t i = 0; i < d; ++i) cur[i] = lo[i];
  const std::size_t last = d - 1;
  while (true) {
    cur[last] = lo[last];
    std::size_t cell = lower_bound(cur);
    while (cell < ncell) {
      const std::int64_t* key = keys_.data() + cell * d;
      bool same_prefix = true;
      for (std::size_t i = 0; i < last && same_prefix; ++i) same_prefix = key[i] == cur[i];
      if (!same_prefix || key[last] > hi[last]) break;
      scan_cell(cell);
      ++cell;
    }
    std::size_t i = last;
    while (i > 0) {
      --i;
      if (++cur[i] <= hi[i]) break;
      cur[i] = lo[i];
      if (i == 0) return;
    }
    if (last == 0) return;
  }
}

}  // namespace pinpat
