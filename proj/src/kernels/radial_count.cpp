#include <omp.h>

#include <algorithm>

#include "pinpat/kernels.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat::kernels {

namespace {

// Index of the first radius whose square is >= s, i.e. the first ball containing the point.
std::size_t first_ball(const std::vector<double>& r2, double s) {
  return static_cast<std::size_t>(std::lower_bound(r2.begin(), r2.end(), s) - r2.begin());
}

std::vector<std::uint64_t> prefix(std::vector<std::uint64_t> hist, std::size_t m) {
  std::vector<std::uint64_t> out(m, 0);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += hist[i];
    out[i] = acc;
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> radial_count_serial(std::span<const double> flat, int dim, std::span<const double> radii) {
  const std::size_t d = static_cast<std::size_t>(dim);
  const std::size_t n = flat.size() / d;
  std::vector<double> r2(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) r2[i] = radii[i] * radii[i];
  std::vector<std::uint64_t> hist(radii.size() + 1, 0);
  for (std::size_t p = 0; p < n; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += flat[p * d + i] * flat[p * d + i];
    ++hist[first_ball(r2, s)];
  }
  return prefix(std::move(hist), radii.size());
}

std::vector<std::uint64_t> radial_count_omp(std::span<const double> flat, int dim, std::span<const double> radii) {
  const std::size_t d = static_cast<std::size_t>(dim);
  const std::int64_t n = static_cast<std::int64_t>(flat.size() / d);
  const std::size_t m = radii.size();
  std::vector<double> r2(m);
  for (std::size_t i = 0; i < m; ++i) r2[i] = radii[i] * radii[i];
  std::vector<std::uint64_t> hist(m + 1, 0);
#pragma omp parallel num_threads(thread_count())
  {
    std::vector<std::uint64_t> local(m + 1, 0);
#pragma omp for schedule(static)
    for (std::int64_t p = 0; p < n; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double v = flat[static_cast<std::size_t>(p) * d + i];
        s += v * v;
      }
      ++local[first_ball(r2, s)];
    }
#pragma omp critical
    for (std::size_t i = 0; i <= m; ++i) hist[i] += local[i];
  }
  return prefix(std::move(hist), m);
}

}  // namespace pinpat::kernels
