#include "pinpat/cone.hpp"

#include <algorithm>
#include <cmath>

#include "pinpat/detector.hpp"
#include "pinpat/errors.hpp"

namespace pinpat {

SolidCone::SolidCone(int d, double h) : SolidCone(Point::unit(d, 0), h) {}

SolidCone::SolidCone(Point ax, double h) : dim(ax.dim()), half_angle(h) {
  require(h > 0.0 && h < kPi / 2, ErrorCode::InvalidArgument, "half-angle must lie in (0, pi/2)");
  const double n = ax.norm();
  require(n > 0.0, ErrorCode::ZeroVector, "cone axis is zero");
  axis = ax * (1.0 / n);
}

bool SolidCone::axis_is_e1() const { return axis == Point::unit(dim, 0); }

bool cone_contains(const SolidCone& c, std::span<const double> p) {
  require(static_cast<int>(p.size()) == c.dim, ErrorCode::DimensionMismatch, "point and cone dimensions differ");
  if (std::all_of(p.begin(), p.end(), [](double v) { return v == 0.0; })) return true;
  return angle_between(p, c.axis.coords()) <= c.half_angle;
}

bool cone_contains(const SolidCone& c, const Point& p) { return cone_contains(c, p.coords()); }

ConeParameters ConeParameters::make(double alpha, int dim, int s, int t) {
  require(dim >= 2, ErrorCode::BadDimension, "cone dimension must be >= 2");
  require(alpha > 0.0 && alpha < kPi, ErrorCode::InvalidArgument, "alpha must lie in (0, pi)");
  require(s >= 0 && t >= 0 && s < 60 && t < 60, ErrorCode::InvalidArgument, "exponents out of range");
  ConeParameters p{alpha, dim, s, t};
  require(p.slack_angle() < alpha, ErrorCode::InvalidArgument, "2^t alpha' must be < alpha");
  return p;
}

double ConeParameters::alpha_prime() const { return alpha / (std::ldexp(1.0, shrink_exponent) * dim); }
double ConeParameters::slack_angle() const { return std::ldexp(alpha_prime(), slack_exponent); }
SolidCone ConeParameters::cone() const { return SolidCone(dim, alpha_prime() / 2.0); }

namespace {
// integral_0^h sin^m
double sin_power_integral(int m, double h) {
  if (m == 0) return h;
  if (m == 1) return 1.0 - std::cos(h);
  return -std::cos(h) * std::pow(std::sin(h), m - 1) / m + (m - 1.0) / m * sin_power_integral(m - 2, h);
}

double sphere_area(int d) {  // area of S^{d-1}
  return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0);
}
}  // namespace

double cone_sector_ratio(int dim, double half_angle) {
  if (dim == 2) return half_angle;  // (alpha'/2) R^2 / R^2
  // R^d / d * area(S^{d-2}) * int_0^h sin^{d-2}
  return sphere_area(dim - 1) * sin_power_integral(dim - 2, half_angle) / dim;
}

double cone_small_angle_constant(int dim) {
  // sin^{d-2} ~ theta^{d-2}: ratio ~ area(S^{d-2}) (alpha'/2)^{d-1} / (d (d-1))
  if (dim == 2) return 0.5;
  return sphere_area(dim - 1) / (dim * (dim - 1.0) * std::ldexp(1.0, dim - 1));
}

ConeDensity cone_density(const SolidCone& c, std::span<const double> radii, double pitch, double floor_fraction,
                         Exec exec) {
  require(c.axis_is_e1(), ErrorCode::InvalidArgument, "lattice counting needs the e1 axis");
  require(pitch > 0.0, ErrorCode::InvalidArgument, "pitch must be positive");
  require(!radii.empty(), ErrorCode::EmptyRadiusList, "radius list is empty");
  ConeDensity out;
  DensityND lat;
  lat.dim = c.dim;
  lat.radii.assign(radii.begin(), radii.end());
  const double cell = std::pow(pitch, c.dim);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && (i == 0 || radii[i] > radii[i - 1]), ErrorCode::InvalidArgument,
            "radii must be positive and increasing");
    const std::uint64_t cnt = exec == Exec::serial
                                  ? kernels::cone_lattice_count_serial(c.dim, c.half_angle, radii[i], pitch)
                                  : kernels::cone_lattice_count_omp(c.dim, c.half_angle, radii[i], pitch);
    lat.counts.push_back(cnt);
    lat.ratios.push_back(static_cast<double>(cnt) * cell / std::pow(radii[i], c.dim));
    lat.sup_ratio = std::max(lat.sup_ratio, lat.ratios.back());
  }
  const double exact = cone_sector_ratio(c.dim, c.half_angle);
  out.exact.assign(radii.size(), exact);
  out.lattice = lat;
  if (c.dim == 2) {
    out.density = lat;
    out.density.ratios.assign(radii.size(), exact);
    out.density.sup_ratio = exact;
  } else {
    out.density = lat;
  }
  out.floor = floor_fraction * cone_small_angle_constant(c.dim) * std::pow(c.aperture(), c.dim - 1);
  out.meets_floor = std::all_of(out.density.ratios.begin(), out.density.ratios.end(),
                                [&](double r) { return r > out.floor; });
  return out;
}

DiscretizedSet discretize_cone(const SolidCone& c, double radius, double pitch, double thickness, Exec exec) {
  require(c.axis_is_e1(), ErrorCode::InvalidArgument, "lattice discretization needs the e1 axis");
  auto flat = exec == Exec::serial ? kernels::cone_lattice_points_serial(c.dim, c.half_angle, radius, pitch)
                                   : kernels::cone_lattice_points_omp(c.dim, c.half_angle, radius, pitch);
  return DiscretizedSet(c.dim, std::move(flat), pitch, thickness);
}

// Threshold derivation. Put u = y - x = u1 e1 + u_perp with y = a e1 + b in the
// cone (|b| <= a tan h, a >= 0) and x = x1 e1 + x_perp (|x_perp| <= |x| sin h).
// Then u1 = a - x1 and
//   |u_perp| <= a tan h + |x| sin h <= u1 tan h + c,   c = |x| (tan h + sin h).
// If u1 <= 0 then |u1| <= x1 <= |x| and |u_perp| <= c, so |u| <= m0 =
// sqrt(|x|^2 + c^2); hence |u| > m0 forces u1 > 0, and then
//   tan angle(u, e1) <= tan h + c / u1,   |u| <= u1 (1 + tan h) + c.
// angle(u, e1) <= 2^t h follows from u1 >= c / (tan 2^t h - tan h), which holds
// once |u| >= c (1 + (1 + tan h) / (tan 2^t h - tan h)). Two such vectors then
// make an angle <= 2^{t+1} h = 2^t alpha'.
AngleThreshold angle_lemma_threshold(const SolidCone& c, const Point& x, int slack_exponent) {
  require(x.dim() == c.dim, ErrorCode::DimensionMismatch, "pin and cone dimensions differ");
  require(cone_contains(c, x), ErrorCode::PreconditionViolated, "pin must lie in the cone");
  require(c.axis_is_e1(), ErrorCode::InvalidArgument, "threshold derivation assumes the e1 axis");
  AngleThreshold out;
  const double h = c.half_angle;
  const double wide = std::ldexp(h, slack_exponent);
  require(wide < kPi / 2, ErrorCode::InvalidArgument, "2^t alpha'/2 must be below pi/2");
  if (x.is_zero()) {
    out.apex = true;
    out.m = 0.0;
    out.bound = c.aperture();
    return out;
  }
  const double nx = x.norm();
  const double th = std::tan(h);
  const double cc = nx * (th + std::sin(h));
  const double m0 = std::hypot(nx, cc) * (1.0 + 1e-12);
  const double m1 = cc * (1.0 + (1.0 + th) / (std::tan(wide) - th));
  out.m = std::max(m0, m1);
  out.bound = 2.0 * wide;
  return out;
}

MonteCarloReport angle_lemma_monte_carlo(const SolidCone& c, const Point& x, double threshold, double bound,
                                         std::uint64_t samples, std::uint64_t seed, Exec exec) {
  require(c.axis_is_e1(), ErrorCode::InvalidArgument, "sampler assumes the e1 axis");
  require(x.dim() == c.dim, ErrorCode::DimensionMismatch, "pin and cone dimensions differ");
  MonteCarloReport r;
  r.threshold = threshold;
  r.bound = bound;
  r.sample = exec == Exec::serial
                 ? kernels::angle_pairs_serial(c.dim, c.half_angle, x.coords(), threshold, bound, samples, seed)
                 : kernels::angle_pairs_omp(c.dim, c.half_angle, x.coords(), threshold, bound, samples, seed);
  return r;
}

double tighten_threshold(const SolidCone& c, const Point& x, int slack_exponent, std::uint64_t samples,
                         std::uint64_t seed, int iterations) {
  const AngleThreshold cert = angle_lemma_threshold(c, x, slack_exponent);
  if (cert.apex) return 0.0;
  double lo = 0.0, hi = cert.m;
  for (int it = 0; it < iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto rep = angle_lemma_monte_carlo(c, x, mid, cert.bound, samples, mix_seed(seed, static_cast<std::uint64_t>(it)));
    if (rep.passed())
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

ScalingFactorSet scan_pinned_copies(const DiscretizedSet& e, const Point& x, const Pattern& v,
                                    std::span<const double> r_grid, double tol, Exec exec) {
  require(v.is_normalized(), ErrorCode::PreconditionViolated, "pattern must be normalized");
  return pinned_scaling_set(e, x, v, r_grid, tol, DetectorOptions{}, exec);
}

}  // namespace pinpat
