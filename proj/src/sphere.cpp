#include "pinpat/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "pinpat/errors.hpp"
#include "pinpat/kernels.hpp"

namespace pinpat {

Point SphereSlice::at(double theta1) const { return (u * std::cos(theta1) + v * std::sin(theta1)) * radius; }

std::vector<double> polar_point(int d, const std::vector<double>& angles) {
  require(d >= 2, ErrorCode::BadDimension, "d must be >= 2");
  require(static_cast<int>(angles.size()) == d - 1, ErrorCode::DimensionMismatch, "need d - 1 angles");
  std::vector<double> w(static_cast<std::size_t>(d));
  double prod = 1.0;
  for (int j = 0; j < d - 1; ++j) {
    w[static_cast<std::size_t>(j)] = prod * std::cos(angles[static_cast<std::size_t>(j)]);
    prod *= std::sin(angles[static_cast<std::size_t>(j)]);
  }
  w[static_cast<std::size_t>(d - 1)] = prod;
  return w;
}

double polar_jacobian(int d, const std::vector<double>& angles) {
  double j = 1.0;
  for (int i = 1; i <= d - 2; ++i) j *= std::pow(std::abs(std::sin(angles[static_cast<std::size_t>(i - 1)])), d - i - 1);
  return j;
}

std::vector<SphereSlice> slice_sphere(double r, int d, SliceGrid grid) {
  require(d >= 3, ErrorCode::BadDimension, "slice_sphere needs d >= 3");
  require(d <= kMaxDim, ErrorCode::BadDimension, "dimension too large");
  require(r > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  require(grid.per_angle >= 1, ErrorCode::InvalidArgument, "grid needs at least one point per angle");
  const int n = grid.per_angle;
  const int fixed = d - 2;  // theta_2..theta_{d-2} and phi
  std::vector<int> idx(static_cast<std::size_t>(fixed), 0);
  std::vector<SphereSlice> out;
  while (true) {
    SphereSlice s;
    s.radius = r;
    for (int a = 0; a < fixed; ++a) {
      const bool is_phi = a == fixed - 1;
      const double t = is_phi ? kPi * idx[static_cast<std::size_t>(a)] / n : kPi * (idx[static_cast<std::size_t>(a)] + 0.5) / n;
      s.angles.push_back(t);
    }
    // beta = point of S^{d-2} at angles (theta_2.., phi)
    std::vector<double> beta;
    if (d - 1 == 2) {
      beta = {std::cos(s.angles[0]), std::sin(s.angles[0])};
    } else {
      beta = polar_point(d - 1, s.angles);
    }
    std::vector<double> v(static_cast<std::size_t>(d), 0.0);
    for (int k = 0; k < d - 1; ++k) v[static_cast<std::size_t>(k + 1)] = beta[static_cast<std::size_t>(k)];
    s.u = Point::unit(d, 0);
    s.v = Point(std::move(v));
    out.push_back(std::move(s));
    int a = fixed - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] >= n) {
      idx[static_cast<std::size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

int slice_grid_for_spacing(double r, double spacing, int cap) {
  require(spacing > 0.0, ErrorCode::InvalidArgument, "spacing must be positive");
  const double n = std::ceil(kPi * r / spacing);
  return static_cast<int>(std::clamp(n, 1.0, static_cast<double>(std::max(cap, 1))));
}

Isometry slice_alignment(const SphereSlice& s) {
  const int d = s.u.dim();
  const std::vector<double> from = complete_basis(d, {s.u, s.v});
  std::vector<double> to(static_cast<std::size_t>(d * d), 0.0);
  for (int c = 0; c < d; ++c) to[static_cast<std::size_t>(c * d + c)] = 1.0;
  // from columns -> standard basis columns; O = I * F^T
  return Isometry::from_bases(d, from, to);
}

double sphere_area_exact(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

SphereReport sphere_measure_checks(int d, int nodes, double radius, Exec exec) {
  require(d >= 2 && d <= kMaxDim, ErrorCode::BadDimension, "d out of range");
  require(nodes >= 2, ErrorCode::InvalidArgument, "need at least 2 quadrature nodes");
  require(radius > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  SphereReport rep;
  rep.dim = d;
  rep.nodes = nodes;
  rep.radius = radius;
  rep.area = exec == Exec::serial ? kernels::polar_jacobian_integral_serial(d, nodes)
                                  : kernels::polar_jacobian_integral_omp(d, nodes);
  rep.area_exact = sphere_area_exact(d);
  rep.area_rel_err = std::abs(rep.area - rep.area_exact) / rep.area_exact;
  rep.ball = exec == Exec::serial ? kernels::coarea_ball_volume_serial(d, nodes, radius)
                                  : kernels::coarea_ball_volume_omp(d, nodes, radius);
  rep.ball_exact = rep.area_exact * std::pow(radius, d) / d;
  rep.ball_rel_err = std::abs(rep.ball - rep.ball_exact) / rep.ball_exact;
  return rep;
}

CoareaSplit coarea_split(const DiscretizedSet& a, const Point& x, const IntervalUnion& d_union, double radius) {
  require(x.dim() == a.dim(), ErrorCode::DimensionMismatch, "pin and set dimensions differ");
  require(radius > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  CoareaSplit out;
  out.radius = radius;
  const double cell = std::pow(a.pitch(), a.dim());
  const auto& iv = d_union.intervals();
  std::uint64_t in = 0, all = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double rho = distance(a.point(i), x.coords());
    if (rho > radius) continue;
    ++all;
    auto it = std::upper_bound(iv.begin(), iv.end(), rho,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    if (it != iv.begin() && rho <= std::prev(it)->second) ++in;
  }
  out.points = all;
  out.i1 = static_cast<double>(in) * cell;
  out.i2 = static_cast<double>(all - in) * cell;
  out.total = out.i1 + out.i2;
  return out;
}

}  // namespace pinpat
