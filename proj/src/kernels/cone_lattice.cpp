#include <omp.h>

#include <cmath>

#include "pinpat/geometry.hpp"
#include "pinpat/kernels.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat::kernels {

namespace {

// Lattice point (i, m_1, ..., m_{d-1}) * h is in the set iff the exact
// floating predicates agree: |z| <= R and angle(z, e1) <= half_angle.
struct ConeLattice {
  int dim;
  double half;
  double radius;
  double h;
  double tan_half;
  std::int64_t columns;

  ConeLattice(int d, double half_angle, double r, double pitch)
      : dim(d), half(half_angle), radius(r), h(pitch), tan_half(std::tan(half_angle)),
        columns(static_cast<std::int64_t>(std::floor(r / pitch)) + 2) {}

  bool inside(const double* z) const {
    double s = 0.0;
    bool zero = true;
    for (int k = 0; k < dim; ++k) {
      s += z[k] * z[k];
      zero = zero && z[k] == 0.0;
    }
    if (s > radius * radius) return false;
    if (zero) return true;
    double e1[kMaxDim] = {1.0};
    return angle_between(std::span<const double>(z, static_cast<std::size_t>(dim)),
                         std::span<const double>(e1, static_cast<std::size_t>(dim))) <= half;
  }

  // squared radius (lattice units) of the cross-section of column i, or < 0 if empty
  double section(std::int64_t i) const {
    const double di = static_cast<double>(i);
    const double cone = di * tan_half;
    const double ball = (radius / h) * (radius / h) - di * di;
    return std::min(cone * cone, ball);
  }

  // Visit members of column i in lexicographic order of (m_1..m_{d-1}).
  template <class F>
  void visit_column(std::int64_t i, F&& f) const {
    const double q = section(i);
    if (q < -4.0 * (static_cast<double>(i) + 1.0)) return;
    const double s = std::sqrt(std::max(q, 0.0));
    const std::int64_t outer = static_cast<std::int64_t>(std::floor(s)) + 1;
    const std::int64_t inner = static_cast<std::int64_t>(std::floor(s)) - 1;  // |m| <= inner is inside
    double z[kMaxDim];
    z[0] = static_cast<double>(i) * h;
    std::int64_t m[kMaxDim];
    const int free_dims = dim - 1;
    // odometer over the box [-outer, outer]^{d-1}, filtered by |m| <= outer
    for (int k = 0; k < free_dims; ++k) m[k] = -outer;
    while (true) {
      std::int64_t norm2 = 0;
      for (int k = 0; k < free_dims; ++k) norm2 += m[k] * m[k];
      if (norm2 <= outer * outer) {
        for (int k = 0; k < free_dims; ++k) z[k + 1] = static_cast<double>(m[k]) * h;
        const bool in = (inner >= 1 && norm2 <= inner * inner) || inside(z);
        if (in) f(z);
      }
      int k = free_dims - 1;
      while (k >= 0 && ++m[k] > outer) {
        m[k] = -outer;
        --k;
      }
      if (k < 0) break;
    }
  }

  std::uint64_t count_column(std::int64_t i) const {
    if (dim == 2) {
      const double q = section(i);
      if (q < -4.0 * (static_cast<double>(i) + 1.0)) return 0;
      const double s = std::sqrt(std::max(q, 0.0));
      const std::int64_t outer = static_cast<std::int64_t>(std::floor(s)) + 1;
      const std::int64_t inner = static_cast<std::int64_t>(std::floor(s)) - 1;
      std::uint64_t cnt = 0;
      std::int64_t start = 0;
      if (inner >= 1) {
        cnt = static_cast<std::uint64_t>(2 * inner + 1);
        start = inner + 1;
      }
      double z[2] = {static_cast<double>(i) * h, 0.0};
      for (std::int64_t j = start; j <= outer; ++j) {
        z[1] = static_cast<double>(j) * h;
        if (inside(z)) cnt += j == 0 ? 1 : 2;
      }
      return cnt;
    }
    std::uint64_t cnt = 0;
    visit_column(i, [&](const double*) { ++cnt; });
    return cnt;
  }
};

}  // namespace

std::uint64_t cone_lattice_count_serial(int dim, double half_angle, double radius, double pitch) {
  const ConeLattice cl(dim, half_angle, radius, pitch);
  std::uint64_t total = 0;
  for (std::int64_t i = 0; i < cl.columns; ++i) total += cl.count_column(i);
  return total;
}

std::uint64_t cone_lattice_count_omp(int dim, double half_angle, double radius, double pitch) {
  const ConeLattice cl(dim, half_angle, radius, pitch);
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : total) num_threads(thread_count())
  for (std::int64_t i = 0; i < cl.columns; ++i) total += cl.count_column(i);
  return total;
}

std::vector<double> cone_lattice_points_serial(int dim, double half_angle, double radius, double pitch) {
  const ConeLattice cl(dim, half_angle, radius, pitch);
  std::vector<double> out;
  for (std::int64_t i = 0; i < cl.columns; ++i)
    cl.visit_column(i, [&](const double* z) { out.insert(out.end(), z, z + dim); });
  return out;
}

std::vector<double> cone_lattice_points_omp(int dim, double half_angle, double radius, double pitch) {
  const ConeLattice cl(dim, half_angle, radius, pitch);
  const std::int64_t cols = cl.columns;
  std::vector<std::uint64_t> offset(static_cast<std::size_t>(cols) + 1, 0);
#pragma omp parallel for schedule(dynamic, 256) num_threads(thread_count())
  for (std::int64_t i = 0; i < cols; ++i) offset[static_cast<std::size_t>(i) + 1] = cl.count_column(i);
  for (std::int64_t i = 0; i < cols; ++i) offset[static_cast<std::size_t>(i) + 1] += offset[static_cast<std::size_t>(i)];
  std::vector<double> out(offset.back() * static_cast<std::uint64_t>(dim));
#pragma omp parallel for schedule(dynamic, 256) num_threads(thread_count())
  for (std::int64_t i = 0; i < cols; ++i) {
    double* dst = out.data() + offset[static_cast<std::size_t>(i)] * static_cast<std::uint64_t>(dim);
    cl.visit_column(i, [&](const double* z) {
      for (int k = 0; k < dim; ++k) *dst++ = z[k];
    });
  }
  return out;
}

}  // namespace pinpat::kernels
