#include "pinpat/geometry.hpp"

#include <algorithm>
#include <limits>

#include "pinpat/errors.hpp"

namespace pinpat {

Point::Point(std::vector<double> coords) : c_(std::move(coords)) {
  require(c_.size() >= 2, ErrorCode::BadDimension, "point dimension must be >= 2");
  for (double v : c_) require(std::isfinite(v), ErrorCode::InvalidArgument, "non-finite coordinate");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zero(int dim) { return Point(std::vector<double>(static_cast<std::size_t>(dim), 0.0)); }

Point Point::unit(int dim, int axis) {
  std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
  require(axis >= 0 && axis < dim, ErrorCode::BadDimension, "axis out of range");
  c[static_cast<std::size_t>(axis)] = 1.0;
  return Point(std::move(c));
}

double Point::norm2() const { return dot(c_, c_); }

double Point::norm() const {
  // hypot-style scaling keeps tiny and huge coordinates exact enough
  double scale = 0.0;
  for (double v : c_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : c_) s += (v / scale) * (v / scale);
  return scale * std::sqrt(s);
}

bool Point::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

Point Point::operator+(const Point& o) const {
  require(dim() == o.dim(), ErrorCode::DimensionMismatch, "point dimensions differ");
  std::vector<double> r(c_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
  return Point(std::move(r));
}

Point Point::operator-(const Point& o) const {
  require(dim() == o.dim(), ErrorCode::DimensionMismatch, "point dimensions differ");
  std::vector<double> r(c_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
  return Point(std::move(r));
}

Point Point::operator*(double s) const {
  std::vector<double> r(c_);
  for (double& v : r) v *= s;
  return Point(std::move(r));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const Point& a, const Point& b) {
  require(a.dim() == b.dim(), ErrorCode::DimensionMismatch, "point dimensions differ");
  return dot(a.coords(), b.coords());
}

double distance2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(distance2(a, b));
}

double distance(const Point& a, const Point& b) {
  require(a.dim() == b.dim(), ErrorCode::DimensionMismatch, "point dimensions differ");
  return (a - b).norm();
}

double angle_between(std::span<const double> u, std::span<const double> v) {
  require(u.size() == v.size(), ErrorCode::DimensionMismatch, "vector dimensions differ");
  const std::size_t d = u.size();
  double nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    nu = std::max(nu, std::abs(u[i]));
    nv = std::max(nv, std::abs(v[i]));
  }
  require(nu > 0.0 && nv > 0.0, ErrorCode::ZeroVector, "angle with a zero vector");
  // normalize first so the orthogonal residual is formed at unit scale
  double a[kMaxDim * 4], b[kMaxDim * 4];
  std::vector<double> heap;
  double* pa = a;
  double* pb = b;
  if (d > kMaxDim * 4) {
    heap.resize(2 * d);
    pa = heap.data();
    pb = heap.data() + d;
  }
  double la = 0.0, lb = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    pa[i] = u[i] / nu;
    pb[i] = v[i] / nv;
    la += pa[i] * pa[i];
    lb += pb[i] * pb[i];
  }
  la = std::sqrt(la);
  lb = std::sqrt(lb);
  double c = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    pa[i] /= la;
    pb[i] /= lb;
    c += pa[i] * pb[i];
  }
  double s2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double w = pb[i] - c * pa[i];
    s2 += w * w;
  }
  return std::atan2(std::sqrt(s2), c);
}

double angle_between(const Point& u, const Point& v) { return angle_between(u.coords(), v.coords()); }

Pattern::Pattern(std::vector<Point> points) : pts_(std::move(points)) {
  require(pts_.size() >= 2, ErrorCode::BadLength, "a pattern needs at least 2 points");
  const int d = pts_.front().dim();
  for (const auto& p : pts_) require(p.dim() == d, ErrorCode::DimensionMismatch, "pattern points differ in dimension");
  for (std::size_t i = 0; i < pts_.size(); ++i)
    for (std::size_t j = i + 1; j < pts_.size(); ++j)
      require(!(pts_[i] == pts_[j]), ErrorCode::DuplicatePoints, "pattern points coincide");
}

double Pattern::min_pairwise_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts_.size(); ++i)
    for (std::size_t j = i + 1; j < pts_.size(); ++j) m = std::min(m, distance(pts_[i], pts_[j]));
  return m;
}

bool Pattern::pinned_at_origin(double eps) const {
  return !pts_.empty() && pts_.front().norm() <= eps;
}

bool Pattern::is_normalized(const Tolerances& tol) const {
  return pinned_at_origin() && std::abs(min_pairwise_distance() - 1.0) <= tol.normalized_check;
}

Pattern normalize_pattern(const Pattern& v) {
  require(v.size() >= 2, ErrorCode::BadLength, "a pattern needs at least 2 points");
  const Point origin = v[0];
  const double m = v.min_pairwise_distance();
  require(m > 0.0, ErrorCode::DuplicatePoints, "pattern points coincide");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (const auto& p : v.points()) out.push_back((p - origin) * (1.0 / m));
  Pattern r(std::move(out));
  r.normalized_ = true;
  return r;
}

double smallest_angle(const Pattern& v, const Tolerances& tol) {
  require(v.size() >= 3, ErrorCode::BadLength, "smallest_angle needs k >= 3");
  double best = kPi;
  const int k = v.size();
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) {
      if (i == j) continue;
      for (int l = i + 1; l < k; ++l) {
        if (l == j) continue;
        const double a = angle_between(v[i] - v[j], v[l] - v[j]);
        if (a <= tol.collinear_angle || a >= kPi - tol.collinear_angle)
          fail(ErrorCode::CollinearTriple, "three pattern points are collinear");
        best = std::min(best, a);
      }
    }
  }
  return best;
}

Isometry::Isometry(int dim, std::vector<double> row_major, const Tolerances& tol)
    : d_(dim), m_(std::move(row_major)) {
  require(dim >= 2, ErrorCode::BadDimension, "isometry dimension must be >= 2");
  require(m_.size() == static_cast<std::size_t>(dim * dim), ErrorCode::DimensionMismatch,
          "matrix size does not match dimension");
  require(orthogonality_error() <= tol.orthogonality, ErrorCode::NotOrthogonal,
          "matrix is not orthogonal within tolerance");
}

double Isometry::orthogonality_error() const {
  double worst = 0.0;
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b) {
      double s = 0.0;
      for (int r = 0; r < d_; ++r) s += at(r, a) * at(r, b);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

Isometry Isometry::identity(int dim) {
  std::vector<double> m(static_cast<std::size_t>(dim * dim), 0.0);
  for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i * dim + i)] = 1.0;
  return Isometry(dim, std::move(m));
}

Isometry Isometry::planar_rotation(int dim, double angle, int axis_a, int axis_b) {
  require(axis_a != axis_b && axis_a >= 0 && axis_b >= 0 && axis_a < dim && axis_b < dim,
          ErrorCode::BadDimension, "bad rotation axes");
  std::vector<double> m(static_cast<std::size_t>(dim * dim), 0.0);
  for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i * dim + i)] = 1.0;
  const double c = std::cos(angle), s = std::sin(angle);
  auto at = [&](int r, int col) -> double& { return m[static_cast<std::size_t>(r * dim + col)]; };
  at(axis_a, axis_a) = c;
  at(axis_a, axis_b) = -s;
  at(axis_b, axis_a) = s;
  at(axis_b, axis_b) = c;
  return Isometry(dim, std::move(m));
}

Isometry Isometry::from_bases(int dim, const std::vector<double>& from_cols,
                              const std::vector<double>& to_cols) {
  // O = T * F^T with F, T column-major orthonormal
  std::vector<double> m(static_cast<std::size_t>(dim * dim), 0.0);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k)
        s += to_cols[static_cast<std::size_t>(k * dim + r)] * from_cols[static_cast<std::size_t>(k * dim + c)];
      m[static_cast<std::size_t>(r * dim + c)] = s;
    }
  return Isometry(dim, std::move(m));
}

void Isometry::apply(const double* in, double* out) const {
  for (int r = 0; r < d_; ++r) {
    double s = 0.0;
    for (int c = 0; c < d_; ++c) s += at(r, c) * in[c];
    out[r] = s;
  }
}

Point Isometry::apply(const Point& p) const {
  require(p.dim() == d_, ErrorCode::DimensionMismatch, "isometry and point dimensions differ");
  std::vector<double> out(static_cast<std::size_t>(d_));
  apply(p.data(), out.data());
  return Point(std::move(out));
}

Pattern Isometry::apply(const Pattern& v) const {
  require(v.dim() == d_, ErrorCode::DimensionMismatch, "isometry and pattern dimensions differ");
  std::vector<Point> out;
  for (const auto& p : v.points()) out.push_back(apply(p));
  return Pattern(std::move(out));
}

Isometry Isometry::compose(const Isometry& inner) const {
  require(inner.d_ == d_, ErrorCode::DimensionMismatch, "isometry dimensions differ");
  std::vector<double> m(static_cast<std::size_t>(d_ * d_), 0.0);
  for (int r = 0; r < d_; ++r)
    for (int c = 0; c < d_; ++c) {
      double s = 0.0;
      for (int k = 0; k < d_; ++k) s += at(r, k) * inner.at(k, c);
      m[static_cast<std::size_t>(r * d_ + c)] = s;
    }
  return Isometry(d_, std::move(m));
}

Isometry Isometry::inverse() const {
  std::vector<double> m(static_cast<std::size_t>(d_ * d_));
  for (int r = 0; r < d_; ++r)
    for (int c = 0; c < d_; ++c) m[static_cast<std::size_t>(r * d_ + c)] = at(c, r);
  return Isometry(d_, std::move(m));
}

double Isometry::determinant_sign() const {
  // Gaussian elimination with partial pivoting; only the sign matters
  std::vector<double> a(m_);
  double sign = 1.0;
  for (int c = 0; c < d_; ++c) {
    int piv = c;
    for (int r = c + 1; r < d_; ++r)
      if (std::abs(a[static_cast<std::size_t>(r * d_ + c)]) > std::abs(a[static_cast<std::size_t>(piv * d_ + c)])) piv = r;
    if (piv != c) {
      for (int k = 0; k < d_; ++k)
        std::swap(a[static_cast<std::size_t>(c * d_ + k)], a[static_cast<std::size_t>(piv * d_ + k)]);
      sign = -sign;
    }
    const double p = a[static_cast<std::size_t>(c * d_ + c)];
    if (p < 0) sign = -sign;
    for (int r = c + 1; r < d_; ++r) {
      const double f = a[static_cast<std::size_t>(r * d_ + c)] / p;
      for (int k = c; k < d_; ++k) a[static_cast<std::size_t>(r * d_ + k)] -= f * a[static_cast<std::size_t>(c * d_ + k)];
    }
  }
  return sign;
}

Point apply_isometry(const Isometry& o, const Point& p) { return o.apply(p); }
Pattern apply_isometry(const Isometry& o, const Pattern& v) { return o.apply(v); }

std::vector<Point> place_pattern(const Pattern& v, const Point& x, double r, const Isometry& o) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (const auto& p : v.points()) out.push_back(x + o.apply(p) * r);
  return out;
}

std::vector<double> complete_basis(int dim, const std::vector<Point>& leading, int* rank_out) {
  std::vector<std::vector<double>> basis;
  auto try_add = [&](std::vector<double> w) {
    const double n0 = std::sqrt(dot(w, w));
    if (n0 == 0.0) return;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const double c = dot(w, b);
        for (int i = 0; i < dim; ++i) w[static_cast<std::size_t>(i)] -= c * b[static_cast<std::size_t>(i)];
      }
    const double n1 = std::sqrt(dot(w, w));
    if (n1 <= 1e-9 * n0) return;
    for (double& t : w) t /= n1;
    basis.push_back(std::move(w));
  };
  for (const auto& p : leading) {
    if (static_cast<int>(basis.size()) == dim) break;
    try_add(std::vector<double>(p.coords().begin(), p.coords().end()));
  }
  if (rank_out) *rank_out = static_cast<int>(basis.size());
  for (int a = 0; a < dim && static_cast<int>(basis.size()) < dim; ++a) {
    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    e[static_cast<std::size_t>(a)] = 1.0;
    try_add(std::move(e));
  }
  std::vector<double> cols;
  cols.reserve(static_cast<std::size_t>(dim * dim));
  for (const auto& b : basis) cols.insert(cols.end(), b.begin(), b.end());
  return cols;
}

}  // namespace pinpat
