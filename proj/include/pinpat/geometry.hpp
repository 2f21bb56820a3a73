#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

#include "pinpat/config.hpp"

namespace pinpat {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A point of R^d, d >= 2, finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zero(int dim);
  static Point unit(int dim, int axis);

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return c_; }
  const double* data() const { return c_.data(); }

  double norm() const;
  double norm2() const;
  bool is_zero() const;

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point operator*(double s) const;
  Point operator-() const { return *this * -1.0; }
  bool operator==(const Point& o) const = default;

 private:
  std::vector<double> c_;
};

double dot(std::span<const double> a, std::span<const double> b);
double dot(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);
double distance(std::span<const double> a, std::span<const double> b);
double distance2(std::span<const double> a, std::span<const double> b);

// Angle in [0, pi] from atan2(|u_perp|, u.v); accurate for tiny angles.
double angle_between(std::span<const double> u, std::span<const double> v);
double angle_between(const Point& u, const Point& v);

// Ordered k-tuple of distinct points sharing one dimension.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<Point> points);

  int size() const { return static_cast<int>(pts_.size()); }
  int dim() const { return pts_.empty() ? 0 : pts_.front().dim(); }
  const Point& operator[](int i) const { return pts_[static_cast<std::size_t>(i)]; }
  const std::vector<Point>& points() const { return pts_; }

  // True when built by normalize_pattern (and still satisfies the contract).
  bool normalized() const { return normalized_; }
  // Checks origin first + unit minimum distance, independent of the flag.
  bool is_normalized(const Tolerances& tol = kTolerances) const;
  bool pinned_at_origin(double eps = 0.0) const;

  double min_pairwise_distance() const;

 private:
  friend Pattern normalize_pattern(const Pattern&);
  std::vector<Point> pts_;
  bool normalized_ = false;
};

Pattern normalize_pattern(const Pattern& v);

// Min angle at a middle vertex over all triples; throws on collinear triples.
double smallest_angle(const Pattern& v, const Tolerances& tol = kTolerances);

// Orthogonal d x d matrix, row-major.
class Isometry {
 public:
  Isometry() = default;
  Isometry(int dim, std::vector<double> row_major, const Tolerances& tol = kTolerances);

  static Isometry identity(int dim);
  // Rotation by angle in the (axis_a, axis_b) coordinate plane.
  static Isometry planar_rotation(int dim, double angle, int axis_a = 0, int axis_b = 1);
  // Map f_c -> t_c for two orthonormal bases given as columns (dim x dim).
  static Isometry from_bases(int dim, const std::vector<double>& from_cols,
                             const std::vector<double>& to_cols);

  int dim() const { return d_; }
  double at(int r, int c) const { return m_[static_cast<std::size_t>(r * d_ + c)]; }
  const std::vector<double>& matrix() const { return m_; }

  Point apply(const Point& p) const;
  void apply(const double* in, double* out) const;
  Pattern apply(const Pattern& v) const;
  Isometry compose(const Isometry& inner) const;  // this * inner
  Isometry inverse() const;
  double determinant_sign() const;
  double orthogonality_error() const;

 private:
  int d_ = 0;
  std::vector<double> m_;
};

Point apply_isometry(const Isometry& o, const Point& p);
Pattern apply_isometry(const Isometry& o, const Pattern& v);

// x + r * O(V), pointwise.
std::vector<Point> place_pattern(const Pattern& v, const Point& x, double r, const Isometry& o);

// Orthonormal basis of R^d whose first columns span the given vectors
// (Gram-Schmidt, completed with coordinate axes). Column-major d x d.
std::vector<double> complete_basis(int dim, const std::vector<Point>& leading, int* rank_out = nullptr);

}  // namespace pinpat
