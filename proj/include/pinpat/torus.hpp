#pragma once

#include <vector>

#include "pinpat/geometry.hpp"

namespace pinpat {

struct Arc {
  double lo = 0.0;  // half-open [lo, hi)
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool operator==(const Arc&) const = default;
};

// Reduce an angle into [0, 2pi).
double wrap_angle(double theta);

// Finite union of disjoint half-open arcs on R / 2piZ. Arcs are stored sorted
// inside [0, 2pi]; an arc crossing 0 is split in two.
class TorusSet {
 public:
  TorusSet() = default;
  // Arcs [lo, lo + len) for any real lo and len >= 0; len >= 2pi gives the full circle.
  static TorusSet from_arcs(const std::vector<Arc>& arcs);
  static TorusSet arc(double lo, double hi);
  static TorusSet full();
  static TorusSet empty_set() { return {}; }

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  double measure() const;
  bool contains(double theta) const;

  // {theta + delta : theta in E}
  TorusSet shifted(double delta) const;
  TorusSet intersect(const TorusSet& o) const;
  TorusSet unite(const TorusSet& o) const;

 private:
  static std::vector<Arc> normalize(std::vector<Arc> arcs);
  std::vector<Arc> arcs_;
};

}  // namespace pinpat
