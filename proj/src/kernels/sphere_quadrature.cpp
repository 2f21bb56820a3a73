#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <vector>

#include "pinpat/errors.hpp"
#include "pinpat/geometry.hpp"
#include "pinpat/kernels.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat::kernels {

namespace {

struct Rule {
  std::vector<double> x, w;
};

Rule gauss_legendre(int n, double a, double b) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> t(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)), &gsl_integration_glfixed_table_free);
  require(t != nullptr, ErrorCode::InvalidArgument, "Gauss-Legendre table allocation failed");
  Rule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &r.x[static_cast<std::size_t>(i)],
                                  &r.w[static_cast<std::size_t>(i)], t.get());
  return r;
}

Rule concat(const Rule& a, const Rule& b) {
  Rule r = a;
  r.x.insert(r.x.end(), b.x.begin(), b.x.end());
  r.w.insert(r.w.end(), b.w.begin(), b.w.end());
  return r;
}

// Angle box of the repeated polar map: theta_1 in (0, 2pi) split at pi (|sin| kinks there),
// theta_2..theta_{d-2} in (0, pi), phi in (0, pi).
struct AngularRule {
  int dim;
  std::vector<Rule> axes;  // d - 1 rules

  AngularRule(int d, int n) : dim(d) {
    require(d >= 2 && d <= kMaxDim, ErrorCode::BadDimension, "d out of range");
    require(n >= 1, ErrorCode::InvalidArgument, "need at least one node");
    axes.push_back(concat(gauss_legendre(n, 0.0, kPi), gauss_legendre(n, kPi, kTwoPi)));
    for (int j = 2; j <= d - 1; ++j) axes.push_back(gauss_legendre(n, 0.0, kPi));
  }

  // Weighted sum over all axes except the first, with theta_1 node i0 fixed.
  // f receives the angle vector and the quadrature weight times the Jacobian.
  template <class F>
  double slab(std::size_t i0, F&& f) const {
    const std::size_t m = axes.size();
    std::vector<double> ang(m);
    std::vector<std::size_t> idx(m, 0);
    idx[0] = i0;
    double sum = 0.0;
    while (true) {
      double w = 1.0;
      for (std::size_t a = 0; a < m; ++a) {
        ang[a] = axes[a].x[idx[a]];
        w *= axes[a].w[idx[a]];
      }
      double jac = 1.0;
      for (int i = 1; i <= dim - 2; ++i) jac *= std::pow(std::abs(std::sin(ang[static_cast<std::size_t>(i - 1)])), dim - i - 1);
      sum += f(ang, w * jac);
      std::size_t a = m;
      bool done = true;
      while (a > 1) {
        --a;
        if (++idx[a] < axes[a].x.size()) {
          done = false;
          break;
        }
        idx[a] = 0;
      }
      if (done) break;
    }
    return sum;
  }

  std::size_t outer() const { return axes[0].x.size(); }
};

template <class F>
double run(const AngularRule& rule, bool parallel, F&& f) {
  const std::size_t n0 = rule.outer();
  std::vector<double> part(n0, 0.0);
  if (parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n0); ++i)
      part[static_cast<std::size_t>(i)] = rule.slab(static_cast<std::size_t>(i), f);
  } else {
    for (std::size_t i = 0; i < n0; ++i) part[i] = rule.slab(i, f);
  }
  double s = 0.0;
  for (double v : part) s += v;  // fixed order
  return s;
}

double jacobian_integral(int dim, int nodes, bool parallel) {
  const AngularRule rule(dim, nodes);
  return run(rule, parallel, [](const std::vector<double>&, double w) { return w; });
}

double ball_volume(int dim, int nodes, double radius, bool parallel) {
  require(radius > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  const AngularRule rule(dim, nodes);
  const Rule rr = gauss_legendre(nodes, 0.0, radius);
  const double r2 = radius * radius;
  return run(rule, parallel, [&](const std::vector<double>& ang, double w) {
    // indicator of |r w| <= R evaluated on the actual embedded point
    double c[kMaxDim];
    double prod = 1.0;
    for (int j = 0; j < dim - 1; ++j) {
      c[j] = prod * std::cos(ang[static_cast<std::size_t>(j)]);
      prod *= std::sin(ang[static_cast<std::size_t>(j)]);
    }
    c[dim - 1] = prod;
    double s = 0.0;
    for (std::size_t i = 0; i < rr.x.size(); ++i) {
      const double r = rr.x[i];
      double n2 = 0.0;
      for (int k = 0; k < dim; ++k) n2 += (r * c[k]) * (r * c[k]);
      if (n2 <= r2 * (1.0 + 1e-12)) s += rr.w[i] * std::pow(r, dim - 1);
    }
    return w * s;
  });
}

}  // namespace

double polar_jacobian_integral_serial(int dim, int nodes) { return jacobian_integral(dim, nodes, false); }
double polar_jacobian_integral_omp(int dim, int nodes) { return jacobian_integral(dim, nodes, true); }

double coarea_ball_volume_serial(int dim, int nodes, double radius) { return ball_volume(dim, nodes, radius, false); }
double coarea_ball_volume_omp(int dim, int nodes, double radius) { return ball_volume(dim, nodes, radius, true); }

}  // namespace pinpat::kernels
