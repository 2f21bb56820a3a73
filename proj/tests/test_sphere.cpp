#include <doctest.h>

#include <cmath>
#include <random>

#include "pinpat/density.hpp"
#include "pinpat/errors.hpp"
#include "pinpat/kernels.hpp"
#include "pinpat/lab/generators.hpp"
#include "pinpat/sphere.hpp"

using namespace pinpat;

namespace {

// |det| of the d x d matrix [w, dw/dtheta_1, ..., dw/dphi] by central differences,
// Gaussian elimination with partial pivoting.
double numeric_jacobian(int d, const std::vector<double>& ang) {
  const auto n = static_cast<std::size_t>(d);
  std::vector<double> m(n * n);
  const auto w = polar_point(d, ang);
  for (std::size_t r = 0; r < n; ++r) m[r * n] = w[r];
  const double eps = 1e-6;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    auto a = ang, b = ang;
    a[j] += eps;
    b[j] -= eps;
    const auto pa = polar_point(d, a), pb = polar_point(d, b);
    for (std::size_t r = 0; r < n; ++r) m[r * n + j + 1] = (pa[r] - pb[r]) / (2 * eps);
  }
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (m[piv * n + c] == 0.0) return 0.0;
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return std::abs(det);
}

}  // namespace

TEST_SUITE("pinned_detector") {
  TEST_CASE("polar points are unit vectors and the Jacobian matches differentiation") {
    auto rng = make_rng(29, 1);
    for (int d = 2; d <= 6; ++d)
      for (int i = 0; i < 50; ++i) {
        std::vector<double> ang(static_cast<std::size_t>(d - 1));
        for (auto& a : ang) a = std::uniform_real_distribution<double>(0.05, kPi - 0.05)(rng);
        ang[0] *= 2.0;
        const auto p = polar_point(d, ang);
        double n2 = 0;
        for (double c : p) n2 += c * c;
        REQUIRE(std::abs(n2 - 1.0) <= 1e-14);
        REQUIRE(std::abs(polar_jacobian(d, ang) - numeric_jacobian(d, ang)) <= 1e-7);
      }
  }

  TEST_CASE("sphere areas and ball volumes") {
    CHECK(sphere_area_exact(2) == doctest::Approx(kTwoPi));
    CHECK(sphere_area_exact(3) == doctest::Approx(4 * kPi));
    CHECK(sphere_area_exact(4) == doctest::Approx(2 * kPi * kPi));
    for (int d = 2; d <= 5; ++d) {
      const auto r = sphere_measure_checks(d, 16, 1.3);
      CAPTURE(d);
      CHECK(r.area_rel_err <= 1e-6);
      CHECK(r.ball_rel_err <= 1e-4);
      CHECK(r.ball_exact == doctest::Approx(unit_ball_volume(d) * std::pow(1.3, d)));
    }
  }

  TEST_CASE("quadrature kernels: serial and OpenMP agree bit for bit") {
    for (int d = 2; d <= 5; ++d) {
      CHECK(kernels::polar_jacobian_integral_serial(d, 12) == kernels::polar_jacobian_integral_omp(d, 12));
      CHECK(kernels::coarea_ball_volume_serial(d, 12, 2.0) == kernels::coarea_ball_volume_omp(d, 12, 2.0));
    }
  }

  TEST_CASE("coarea split partitions the set mass") {
    const double h = 0.05;
    const auto a = lab::grid_ball(2, 3.0, h);
    const IntervalUnion dset({{0.5, 1.0}, {2.0, 2.5}});
    const auto s = coarea_split(a, Point{0, 0}, dset, 3.0);
    CHECK(s.i1 + s.i2 == doctest::Approx(s.total));
    CHECK(s.total == doctest::Approx(static_cast<double>(s.points) * h * h));
    // annuli 0.5..1 and 2..2.5 have area pi (0.75 + 2.25) = 3 pi
    CHECK(std::abs(s.i1 / (3 * kPi) - 1.0) < 0.03);
    CHECK(std::abs(s.total / (9 * kPi) - 1.0) < 0.02);
  }

  TEST_CASE("slice grid resolution") {
    CHECK(slice_grid_for_spacing(1.0, 0.1, 2048) == 32);
    CHECK(slice_grid_for_spacing(1e6, 1e-6, 2048) == 2048);
    CHECK(slice_grid_for_spacing(1e-9, 1.0, 2048) == 1);
  }
}

TEST_SUITE("geometry_core") {
  TEST_CASE("radial count kernels agree with a direct count") {
    auto rng = make_rng(29, 2);
    std::vector<double> flat;
    for (int i = 0; i < 30000; ++i) flat.push_back(std::normal_distribution<double>(0, 2)(rng));
    const std::vector<double> radii{0.5, 1.0, 2.0, 4.0, 8.0};
    const auto a = kernels::radial_count_serial(flat, 3, radii);
    CHECK(a == kernels::radial_count_omp(flat, 3, radii));
    for (std::size_t k = 0; k < radii.size(); ++k) {
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < flat.size(); i += 3) {
        const double r2 = flat[i] * flat[i] + flat[i + 1] * flat[i + 1] + flat[i + 2] * flat[i + 2];
        c += r2 <= radii[k] * radii[k] ? 1 : 0;
      }
      CHECK(a[k] == c);
    }
  }
}
