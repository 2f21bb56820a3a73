#include "pinpat/torus.hpp"

#include <algorithm>

#include "pinpat/errors.hpp"

namespace pinpat {

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;  // fmod rounding on tiny negatives
  return t;
}

std::vector<Arc> TorusSet::normalize(std::vector<Arc> arcs) {
  std::vector<Arc> pieces;
  for (const Arc& a : arcs) {
    require(std::isfinite(a.lo) && std::isfinite(a.hi), ErrorCode::InvalidArgument, "non-finite arc end");
    const double len = a.hi - a.lo;
    require(len >= 0.0, ErrorCode::InvalidArgument, "arc with negative length");
    if (len == 0.0) continue;
    if (len >= kTwoPi) return {Arc{0.0, kTwoPi}};
    const double lo = wrap_angle(a.lo);
    const double hi = lo + len;
    if (hi <= kTwoPi) {
      pieces.push_back({lo, hi});
    } else {
      pieces.push_back({lo, kTwoPi});
      const double rest = hi - kTwoPi;
      if (rest > 0.0) pieces.push_back({0.0, std::min(rest, kTwoPi)});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
  std::vector<Arc> out;
  for (const Arc& p : pieces) {
    if (p.hi <= p.lo) continue;
    if (!out.empty() && p.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, p.hi);
    else
      out.push_back(p);
  }
  return out;
}

TorusSet TorusSet::from_arcs(const std::vector<Arc>& arcs) {
  TorusSet t;
  t.arcs_ = normalize(arcs);
  return t;
}

TorusSet TorusSet::arc(double lo, double hi) { return from_arcs({Arc{lo, hi}}); }

TorusSet TorusSet::full() { return from_arcs({Arc{0.0, kTwoPi}}); }

double TorusSet::measure() const {
  double s = 0.0;
  for (const Arc& a : arcs_) s += a.length();
  return s;
}

bool TorusSet::contains(double theta) const {
  const double t = wrap_angle(theta);
  auto it = std::upper_bound(arcs_.begin(), arcs_.end(), t, [](double v, const Arc& a) { return v < a.lo; });
  if (it == arcs_.begin()) return false;
  --it;
  return t >= it->lo && t < it->hi;
}

TorusSet TorusSet::shifted(double delta) const {
  std::vector<Arc> moved;
  moved.reserve(arcs_.size());
  for (const Arc& a : arcs_) moved.push_back({a.lo + delta, a.lo + delta + a.length()});
  return from_arcs(moved);
}

TorusSet TorusSet::intersect(const TorusSet& o) const {
  TorusSet out;
  std::size_t i = 0, j = 0;
  while (i < arcs_.size() && j < o.arcs_.size()) {
    const double lo = std::max(arcs_[i].lo, o.arcs_[j].lo);
    const double hi = std::min(arcs_[i].hi, o.arcs_[j].hi);
    if (hi > lo) out.arcs_.push_back({lo, hi});
    if (arcs_[i].hi < o.arcs_[j].hi)
      ++i;
    else
      ++j;
  }
  return out;
}

TorusSet TorusSet::unite(const TorusSet& o) const {
  std::vector<Arc> all(arcs_);
  all.insert(all.end(), o.arcs_.begin(), o.arcs_.end());
  return from_arcs(all);
}

}  // namespace pinpat
