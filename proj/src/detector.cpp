#include "pinpat/detector.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "pinpat/errors.hpp"
#include "pinpat/sphere.hpp"

namespace pinpat {

namespace {

double wrap_pi(double a) {
  // into (-pi, pi]
  a = std::fmod(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

double wrap_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Is some sorted angle within delta of target (mod 2 pi)?
bool has_angle_near(const std::vector<double>& sorted, double target, double delta) {
  if (sorted.empty()) return false;
  if (delta >= kPi) return true;
  const double t = wrap_2pi(target);
  auto near = [&](double a) { return std::abs(wrap_pi(a - t)) <= delta; };
  auto it = std::lower_bound(sorted.begin(), sorted.end(), t - delta);
  if (it != sorted.end() && near(*it)) return true;
  // wrap-around at either end
  if (t - delta < 0.0) {
    auto jt = std::lower_bound(sorted.begin(), sorted.end(), t - delta + kTwoPi);
    if (jt != sorted.end() && near(*jt)) return true;
  }
  if (t + delta >= kTwoPi && near(sorted.front())) return true;
  return false;
}

std::vector<double> column(const std::vector<double>& cols, int d, int c) {
  return {cols.begin() + c * d, cols.begin() + (c + 1) * d};
}

}  // namespace

std::vector<double> ScalingFactorSet::radii() const {
  std::vector<double> out;
  out.reserve(scales.size());
  for (const auto& s : scales) out.push_back(s.r);
  return out;
}

PinnedView::PinnedView(const DiscretizedSet& e, const Point& x) {
  require(x.dim() == e.dim(), ErrorCode::DimensionMismatch, "pin and set dimensions differ");
  const std::size_t n = e.size();
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = distance(e.point(i), x.coords());
  idx_.resize(n);
  std::iota(idx_.begin(), idx_.end(), 0u);
  std::stable_sort(idx_.begin(), idx_.end(), [&](std::uint32_t a, std::uint32_t b) { return dist[a] < dist[b]; });
  dist_.resize(n);
  for (std::size_t i = 0; i < n; ++i) dist_[i] = dist[idx_[i]];
}

std::span<const std::uint32_t> PinnedView::annulus(double lo, double hi) const {
  auto a = std::lower_bound(dist_.begin(), dist_.end(), lo);
  auto b = std::upper_bound(dist_.begin(), dist_.end(), hi);
  if (b <= a) return {};
  const auto i0 = static_cast<std::size_t>(a - dist_.begin());
  return {idx_.data() + i0, static_cast<std::size_t>(b - a)};
}

PinnedDetector::PinnedDetector(const DiscretizedSet& e, const Point& x, const Pattern& v, double tol,
                               DetectorOptions opts)
    : e_(e), x_(x), v_(v), tol_(tol), opts_(opts), view_(e, x), d_(e.dim()) {
  require(v.dim() == d_, ErrorCode::DimensionMismatch, "pattern and set dimensions differ");
  require(tol > 0.0 && std::isfinite(tol), ErrorCode::InvalidArgument, "tolerance must be positive");
  require(v.pinned_at_origin(1e-12), ErrorCode::PreconditionViolated, "pattern must have its pin at the origin");
  require(e.nearest_distance(x, tol) <= tol, ErrorCode::PinNotInSet, "pin is not a point of the set");

  const int k = v.size();
  norms_.resize(static_cast<std::size_t>(k - 1));
  std::vector<Point> rest;
  for (int j = 1; j < k; ++j) {
    norms_[static_cast<std::size_t>(j - 1)] = v[j].norm();
    rest.push_back(v[j]);
  }
  rho_ = norms_.front();
  bool equal = true;
  for (double n : norms_) equal = equal && std::abs(n - rho_) <= 1e-12 * rho_;
  frame_ = complete_basis(d_, rest, &rank_);
  circle_ = equal && rank_ <= 2;
  if (circle_) {
    const auto f1 = column(frame_, d_, 0), f2 = column(frame_, d_, 1);
    for (const auto& p : rest) beta_.push_back(std::atan2(dot(p.coords(), f2), dot(p.coords(), f1)));
    beta_.front() = 0.0;
  }
  if (opts_.path == DetectorOptions::Path::fast_only)
    require(circle_, ErrorCode::PreconditionViolated, "fast path needs a pattern on one circle about the pin");
}

double PinnedDetector::residual(const Isometry& o, double r) const {
  double worst = 0.0;
  const double reach = 4.0 * tol_ + e_.pitch();
  std::vector<double> img(static_cast<std::size_t>(d_));
  for (int j = 0; j < v_.size(); ++j) {
    o.apply(v_[j].data(), img.data());
    for (int i = 0; i < d_; ++i) img[static_cast<std::size_t>(i)] = x_[i] + r * img[static_cast<std::size_t>(i)];
    worst = std::max(worst, e_.nearest_distance(img.data(), reach));
    if (!std::isfinite(worst)) break;
  }
  return worst;
}

PinnedDetector::Result PinnedDetector::accept(const Isometry& o, double r) const {
  Result res;
  const double err = residual(o, r);
  if (err <= tol_) {
    res.witness = o;
    res.residual = err;
  }
  return res;
}

PinnedDetector::Result PinnedDetector::fast_planar(double r, const Planar& ring, const std::vector<double>& u,
                                                   const std::vector<double>& w) const {
  Result none;
  const double rad = r * rho_;
  // every set point within tol of a point at radius rad sits inside this angular window
  const double delta = tol_ < rad ? std::asin(tol_ / rad) * (1.0 + 1e-9) + 1e-15 : kPi;
  std::vector<Point> lead{Point(u), Point(w)};
  const std::vector<double> plane = complete_basis(d_, lead);
  const int signs = rank_ <= 1 ? 1 : 2;
  std::vector<double> to(static_cast<std::size_t>(d_ * d_));
  for (double theta : ring.angle) {
    for (int si = 0; si < signs; ++si) {
      const double s = si == 0 ? 1.0 : -1.0;
      bool ok = true;
      for (std::size_t j = 1; j < beta_.size() && ok; ++j) ok = has_angle_near(ring.angle, theta + s * beta_[j], delta);
      if (!ok) continue;
      const double c = std::cos(theta), sn = std::sin(theta);
      for (int i = 0; i < d_; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        to[ui] = c * u[ui] + sn * w[ui];
        to[static_cast<std::size_t>(d_) + ui] = s * (-sn * u[ui] + c * w[ui]);
      }
      for (std::size_t q = 2 * static_cast<std::size_t>(d_); q < to.size(); ++q) to[q] = plane[q];
      Result res = accept(Isometry::from_bases(d_, frame_, to), r);
      if (res.witness) return res;
    }
  }
  return none;
}

PinnedDetector::Result PinnedDetector::fast_search(double r) const {
  const double rad = r * rho_;
  const auto ann = view_.annulus(rad - tol_, rad + tol_);
  if (d_ == 2) {
    Planar ring;
    std::vector<std::pair<double, std::uint32_t>> tmp;
    tmp.reserve(ann.size());
    for (std::uint32_t i : ann) {
      const auto p = e_.point(i);
      tmp.emplace_back(wrap_2pi(std::atan2(p[1] - x_[1], p[0] - x_[0])), i);
    }
    std::sort(tmp.begin(), tmp.end());
    for (const auto& [a, i] : tmp) {
      ring.angle.push_back(a);
      ring.index.push_back(i);
    }
    return fast_planar(r, ring, {1.0, 0.0}, {0.0, 1.0});
  }
  // d >= 3: sweep the circles S_r(alpha) and search each one in its own plane
  const int per = opts_.slices_per_angle > 0
                      ? opts_.slices_per_angle
                      : slice_grid_for_spacing(rad, e_.thickness(), opts_.max_slices_per_angle);
  const auto slices = slice_sphere(rad, d_, SliceGrid{per});
  std::vector<double> rel(static_cast<std::size_t>(d_));
  for (const auto& sl : slices) {
    const auto u = std::vector<double>(sl.u.coords().begin(), sl.u.coords().end());
    const auto w = std::vector<double>(sl.v.coords().begin(), sl.v.coords().end());
    std::vector<std::pair<double, std::uint32_t>> tmp;
    for (std::uint32_t i : ann) {
      const auto p = e_.point(i);
      for (int q = 0; q < d_; ++q) rel[static_cast<std::size_t>(q)] = p[static_cast<std::size_t>(q)] - x_[q];
      const double a = dot(rel, u), b = dot(rel, w);
      const double off2 = std::max(0.0, dot(rel, rel) - a * a - b * b);
      if (off2 <= tol_ * tol_) tmp.emplace_back(wrap_2pi(std::atan2(b, a)), i);
    }
    if (tmp.empty()) continue;
    std::sort(tmp.begin(), tmp.end());
    Planar ring;
    for (const auto& [a, i] : tmp) {
      ring.angle.push_back(a);
      ring.index.push_back(i);
    }
    Result res = fast_planar(r, ring, u, w);
    if (res.witness) return res;
  }
  return {};
}

PinnedDetector::Result PinnedDetector::generic_search(double r) const {
  const int k = v_.size();
  const int m = k - 1;
  std::vector<std::span<const std::uint32_t>> cand(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double rad = r * norms_[static_cast<std::size_t>(j)];
    cand[static_cast<std::size_t>(j)] = view_.annulus(rad - tol_, rad + tol_);
    if (cand[static_cast<std::size_t>(j)].empty()) return {};
  }
  // target pairwise distances among the non-pin points
  std::vector<double> target(static_cast<std::size_t>(m * m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) target[static_cast<std::size_t>(a * m + b)] = r * distance(v_[a + 1], v_[b + 1]);

  Result out;
  std::vector<std::uint32_t> pick(static_cast<std::size_t>(m));
  std::uint64_t nodes = 0;
  const std::uint64_t limit = opts_.generic_node_limit;
  bool stop = false;

  auto solve = [&]() -> bool {
    // orthogonal Procrustes about the pin: maximize tr(O^T H), H = sum (e_j - x) (r p_j)^T
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d_, d_);
    for (int j = 0; j < m; ++j) {
      const auto e = e_.point(pick[static_cast<std::size_t>(j)]);
      for (int a = 0; a < d_; ++a)
        for (int b = 0; b < d_; ++b)
          h(a, b) += (e[static_cast<std::size_t>(a)] - x_[a]) * r * v_[j + 1][b];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd o = svd.matrixU() * svd.matrixV().transpose();
    std::vector<double> rows(static_cast<std::size_t>(d_ * d_));
    for (int a = 0; a < d_; ++a)
      for (int b = 0; b < d_; ++b) rows[static_cast<std::size_t>(a * d_ + b)] = o(a, b);
    Result res = accept(Isometry(d_, std::move(rows)), r);
    if (res.witness) {
      out = std::move(res);
      return true;
    }
    return false;
  };

  auto rec = [&](auto&& self, int j) -> bool {
    if (j == m) return solve();
    for (std::uint32_t idx : cand[static_cast<std::size_t>(j)]) {
      if (limit != 0 && ++nodes > limit) {
        stop = true;
        return false;
      }
      const auto e = e_.point(idx);
      bool ok = true;
      for (int a = 0; a < j && ok; ++a) {
        const double dd = distance(e, e_.point(pick[static_cast<std::size_t>(a)]));
        ok = std::abs(dd - target[static_cast<std::size_t>(a * m + j)]) <= 2.0 * tol_;
      }
      if (!ok) continue;
      pick[static_cast<std::size_t>(j)] = idx;
      if (self(self, j + 1)) return true;
      if (stop) return false;
    }
    return false;
  };
  rec(rec, 0);
  if (!out.witness && stop) out.truncated = true;
  return out;
}

PinnedDetector::Result PinnedDetector::find(double r) const {
  require(r > 0.0 && std::isfinite(r), ErrorCode::InvalidArgument, "scale must be positive");
  using P = DetectorOptions::Path;
  if (opts_.path == P::generic_only || !circle_) return generic_search(r);
  Result res = fast_search(r);
  if (res.witness || d_ == 2 || opts_.path == P::fast_only) return res;
  // slices only cover circles through the polar axis; fall back to the generic search
  return generic_search(r);
}

std::optional<Isometry> occurs_at(const DiscretizedSet& e, const Point& x, const Pattern& v, double r, double tol,
                                  const DetectorOptions& opts) {
  return PinnedDetector(e, x, v, tol, opts).occurs(r);
}

ScalingFactorSet pinned_scaling_set(const DiscretizedSet& e, const Point& x, const Pattern& v,
                                    std::span<const double> r_grid, double tol, const DetectorOptions& opts,
                                    Exec exec, const std::string& pattern_id) {
  require(!r_grid.empty(), ErrorCode::EmptyRadiusList, "scale grid is empty");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    require(std::isfinite(r_grid[i]) && r_grid[i] > 0.0, ErrorCode::InvalidArgument, "scales must be positive");
    require(i == 0 || r_grid[i] > r_grid[i - 1], ErrorCode::InvalidArgument, "scales must increase");
  }
  const PinnedDetector det(e, x, v, tol, opts);
  const std::size_t n = r_grid.size();
  std::vector<PinnedDetector::Result> res(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) res[i] = det.find(r_grid[i]);
  } else {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      try {
        res[static_cast<std::size_t>(i)] = det.find(r_grid[static_cast<std::size_t>(i)]);
      } catch (...) {
#pragma omp critical(pinpat_scan_error)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }

  ScalingFactorSet out;
  out.pin = x;
  out.pattern_id = pattern_id;
  out.r_grid.assign(r_grid.begin(), r_grid.end());
  out.tolerance = tol;
  out.set_pitch = e.pitch();
  out.r_pitch = n > 1 ? (r_grid.back() - r_grid.front()) / static_cast<double>(n - 1) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (res[i].truncated) ++out.truncated;
    if (res[i].witness) out.scales.push_back({r_grid[i], *res[i].witness, res[i].residual});
  }
  const auto accepted = out.radii();
  // density radii: the grid itself, thinned to at most 64 values
  std::vector<double> radii;
  const std::size_t step = std::max<std::size_t>(1, n / 64);
  for (std::size_t i = step - 1; i < n; i += step) radii.push_back(r_grid[i]);
  if (radii.back() != r_grid.back()) radii.push_back(r_grid.back());
  out.density = upper_density_1d(accepted, out.r_pitch / 2.0, radii);
  if (n > 1) {
    const auto u = IntervalUnion::fattened(accepted, out.r_pitch / 2.0);
    out.window_ratio = u.measure_in(r_grid.front(), r_grid.back()) / (r_grid.back() - r_grid.front());
  } else {
    out.window_ratio = accepted.empty() ? 0.0 : 1.0;
  }
  return out;
}

std::vector<double> pinned_distance_set(const DiscretizedSet& a, const Point& x) {
  require(x.dim() == a.dim(), ErrorCode::DimensionMismatch, "pin and set dimensions differ");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = distance(a.point(i), x.coords());
  std::sort(d.begin(), d.end());
  const double gap = a.pitch() / 4.0;
  std::vector<double> out;
  for (double v : d)
    if (out.empty() || v - out.back() > gap) out.push_back(v);
  return out;
}

std::optional<Isometry> match_equal_gap(const std::vector<Point>& u, const std::vector<Point>& w,
                                        const Tolerances& tol) {
  require(!u.empty() && u.size() == w.size(), ErrorCode::LengthMismatch, "families differ in size");
  const int d = u.front().dim();
  const double ell = u.front().norm();
  require(ell > 0.0, ErrorCode::ZeroVector, "points must be nonzero");
  std::vector<Point> all;
  for (const auto* fam : {&u, &w})
    for (const auto& p : *fam) {
      require(p.dim() == d, ErrorCode::DimensionMismatch, "dimensions differ");
      require(std::abs(p.norm() - ell) <= tol.gap_match * ell, ErrorCode::LengthMismatch, "lengths differ");
      all.push_back(p);
    }
  int rank = 0;
  const auto frame = complete_basis(d, all, &rank);
  // residual off the plane, measured directly
  const auto f1 = column(frame, d, 0), f2 = column(frame, d, 1);
  for (const auto& p : all) {
    const double a = dot(p.coords(), f1), b = dot(p.coords(), f2);
    double off2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const double r = p[i] - a * f1[ui] - b * f2[ui];
      off2 += r * r;
    }
    const double off = std::sqrt(off2);
    require(off <= tol.coplanar * ell, ErrorCode::NotCoplanar, "families are not in one plane through the origin");
  }
  auto angle = [&](const Point& p) { return std::atan2(dot(p.coords(), f2), dot(p.coords(), f1)); };
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double gu = angle(u[i + 1]) - angle(u[i]);
    const double gw = angle(w[i + 1]) - angle(w[i]);
    if (std::abs(wrap_pi(gu - gw)) > tol.gap_match) return std::nullopt;
  }
  const double g = angle(w.front()) - angle(u.front());
  std::vector<double> to = frame;
  const double c = std::cos(g), s = std::sin(g);
  for (int i = 0; i < d; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    to[ui] = c * f1[ui] + s * f2[ui];
    to[static_cast<std::size_t>(d) + ui] = -s * f1[ui] + c * f2[ui];
  }
  Isometry o = Isometry::from_bases(d, frame, to);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (distance(o.apply(u[i]), w[i]) > tol.gap_match * ell) return std::nullopt;
  return o;
}

}  // namespace pinpat
