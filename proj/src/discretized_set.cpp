#include "pinpat/discretized_set.hpp"

#include <algorithm>
#include <numeric>

#include "pinpat/errors.hpp"

namespace pinpat {

SpatialIndex::SpatialIndex(int dim, std::span<const double> flat, double edge) : d_(dim), edge_(edge) {
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::BadDimension, "index dimension out of range");
  require(edge > 0.0, ErrorCode::InvalidArgument, "cell edge must be positive");
  const std::size_t d = static_cast<std::size_t>(dim);
  const std::size_t n = flat.size() / d;
  require(n < 0xFFFFFFFFu, ErrorCode::TooLarge, "too many points for the index");
  std::vector<std::int64_t> pk(n * d);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i < d; ++i)
      pk[p * d + i] = static_cast<std::int64_t>(std::floor(flat[p * d + i] / edge));
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(pk.begin() + static_cast<std::ptrdiff_t>(a * d),
                                        pk.begin() + static_cast<std::ptrdiff_t>(a * d + d),
                                        pk.begin() + static_cast<std::ptrdiff_t>(b * d),
                                        pk.begin() + static_cast<std::ptrdiff_t>(b * d + d));
  });
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t* key = pk.data() + static_cast<std::size_t>(order_[k]) * d;
    const bool fresh = keys_.empty() || !std::equal(key, key + d, keys_.end() - static_cast<std::ptrdiff_t>(d));
    if (fresh) {
      keys_.insert(keys_.end(), key, key + d);
      offsets_.push_back(static_cast<std::uint32_t>(k));
    }
  }
  offsets_.push_back(static_cast<std::uint32_t>(n));
  if (n == 0) offsets_.clear();
}

int SpatialIndex::compare_key(std::size_t cell, const std::int64_t* key) const {
  const std::int64_t* k = keys_.data() + cell * static_cast<std::size_t>(d_);
  for (int i = 0; i < d_; ++i) {
    if (k[i] < key[i]) return -1;
    if (k[i] > key[i]) return 1;
  }
  return 0;
}

std::size_t SpatialIndex::lower_bound(const std::int64_t* key) const {
  std::size_t lo = 0, hi = cell_count();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (compare_key(mid, key) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

DiscretizedSet::DiscretizedSet(int dim, std::vector<double> flat, double pitch, double thickness)
    : d_(dim), flat_(std::move(flat)), h_(pitch), eta_(thickness < 0.0 ? pitch / 2.0 : thickness) {
  require(dim >= 2 && dim <= kMaxDim, ErrorCode::BadDimension, "set dimension out of range");
  require(flat_.size() % static_cast<std::size_t>(dim) == 0, ErrorCode::DimensionMismatch,
          "flat coordinate array is not a multiple of the dimension");
  require(pitch > 0.0, ErrorCode::InvalidArgument, "pitch must be positive");
  for (double v : flat_) require(std::isfinite(v), ErrorCode::InvalidArgument, "non-finite coordinate");
  double b2 = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    b2 = std::max(b2, dot(p, p));
  }
  bound_ = std::sqrt(b2);
  index_ = SpatialIndex(dim, flat_, std::max(h_, eta_));
}

DiscretizedSet DiscretizedSet::from_points(const std::vector<Point>& pts, double pitch, double thickness) {
  require(!pts.empty(), ErrorCode::InvalidArgument, "from_points needs at least one point to fix the dimension");
  const int d = pts.front().dim();
  std::vector<double> flat;
  flat.reserve(pts.size() * static_cast<std::size_t>(d));
  for (const auto& p : pts) {
    require(p.dim() == d, ErrorCode::DimensionMismatch, "points differ in dimension");
    flat.insert(flat.end(), p.coords().begin(), p.coords().end());
  }
  return DiscretizedSet(d, std::move(flat), pitch, thickness);
}

Point DiscretizedSet::point_at(std::size_t i) const {
  auto p = point(i);
  return Point(std::vector<double>(p.begin(), p.end()));
}

double DiscretizedSet::nearest_distance(const double* p, double radius) const {
  double best2 = std::numeric_limits<double>::infinity();
  const std::size_t d = static_cast<std::size_t>(d_);
  index_.for_each_in_ball(flat_, p, radius, [&](std::uint32_t idx) {
    const double* q = flat_.data() + static_cast<std::size_t>(idx) * d;
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += (q[i] - p[i]) * (q[i] - p[i]);
    best2 = std::min(best2, s);
  });
  return std::sqrt(best2);
}

double DiscretizedSet::nearest_distance(const Point& p, double radius) const {
  require(p.dim() == d_, ErrorCode::DimensionMismatch, "query dimension differs from set");
  return nearest_distance(p.data(), radius);
}

bool DiscretizedSet::contains(const double* p) const { return nearest_distance(p, eta_) <= eta_; }

bool DiscretizedSet::contains(const Point& p) const {
  require(p.dim() == d_, ErrorCode::DimensionMismatch, "query dimension differs from set");
  return contains(p.data());
}

void DiscretizedSet::query_ball(const double* c, double radius, std::vector<std::uint32_t>& out) const {
  out.clear();
  index_.for_each_in_ball(flat_, c, radius, [&](std::uint32_t idx) { out.push_back(idx); });
  std::sort(out.begin(), out.end());
}

std::vector<std::uint32_t> DiscretizedSet::query_ball(const Point& c, double radius) const {
  require(c.dim() == d_, ErrorCode::DimensionMismatch, "query dimension differs from set");
  std::vector<std::uint32_t> out;
  query_ball(c.data(), radius, out);
  return out;
}

DiscretizedSet DiscretizedSet::mapped(const Isometry& o, const Point& shift, double scale) const {
  require(o.dim() == d_ && shift.dim() == d_, ErrorCode::DimensionMismatch, "map dimension differs from set");
  require(scale > 0.0, ErrorCode::InvalidArgument, "scale must be positive");
  const std::size_t d = static_cast<std::size_t>(d_);
  std::vector<double> out(flat_.size());
  for (std::size_t i = 0; i < size(); ++i) {
    o.apply(flat_.data() + i * d, out.data() + i * d);
    for (std::size_t j = 0; j < d; ++j) out[i * d + j] = shift[static_cast<int>(j)] + scale * out[i * d + j];
  }
  return DiscretizedSet(d_, std::move(out), h_ * scale, eta_ * scale);
}

DiscretizedSet DiscretizedSet::translated(const Point& shift) const {
  return mapped(Isometry::identity(d_), shift, 1.0);
}

}  // namespace pinpat
