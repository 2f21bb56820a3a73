#include <doctest.h>

#include <cmath>
#include <random>

#include "pinpat/catalog.hpp"
#include "pinpat/cone.hpp"
#include "pinpat/detector.hpp"
#include "pinpat/errors.hpp"
#include "pinpat/kernels.hpp"
#include "support/suites.hpp"

using namespace pinpat;

namespace {

// Independent lattice count: every h Z^d point of the box, angle via atan2.
std::uint64_t lattice_count_oracle(int d, double half, double radius, double h) {
  const int n = static_cast<int>(std::floor(radius / h));
  std::uint64_t count = 0;
  std::vector<int> idx(static_cast<std::size_t>(d), -n);
  while (true) {
    double r2 = 0.0, perp2 = 0.0;
    for (int k = 0; k < d; ++k) {
      const double c = idx[static_cast<std::size_t>(k)] * h;
      r2 += c * c;
      if (k > 0) perp2 += c * c;
    }
    const double x0 = idx[0] * h;
    if (r2 <= radius * radius && (r2 == 0.0 || std::atan2(std::sqrt(perp2), x0) <= half)) ++count;
    int k = d - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] > n) idx[static_cast<std::size_t>(k--)] = -n;
    if (k < 0) break;
  }
  return count;
}

}  // namespace

TEST_SUITE("cone_lab") {
  TEST_CASE("cone_contains examples") {
    const SolidCone c(2, 0.1);
    CHECK(cone_contains(c, Point{1, 0}));
    CHECK_FALSE(cone_contains(c, Point{0, 1}));
    CHECK(cone_contains(c, Point{1, 0.05}));  // atan(0.05) = 0.04996
    CHECK(cone_contains(c, Point{0, 0}));
    CHECK(c.aperture() == 0.2);
  }

  TEST_CASE("cone_contains is invariant under positive scaling") {
    auto rng = make_rng(17, 1);
    std::uniform_real_distribution<double> ul(1e-3, 1e3);
    for (int i = 0; i < 2000; ++i) {
      const int d = 2 + i % 3;
      const SolidCone c(d, 0.05 + 0.3 * (i % 5) / 5.0);
      const Point p = pinpat::testing::random_point(rng, d, 1.0);
      REQUIRE(cone_contains(c, p) == cone_contains(c, p * ul(rng)));
    }
  }

  TEST_CASE("cone parameters") {
    const auto p = ConeParameters::make(kPi / 3, 2);
    CHECK(p.alpha_prime() == doctest::Approx(kPi / 12288).epsilon(1e-15));
    CHECK(p.slack_angle() == doctest::Approx(kPi / 12).epsilon(1e-15));
    CHECK(p.cone().half_angle == doctest::Approx(kPi / 24576).epsilon(1e-15));
    // 2^t alpha' must stay below alpha
    CHECK_THROWS_AS(ConeParameters::make(kPi / 3, 2, 1, 2), Error);
    CHECK_THROWS_AS(ConeParameters::make(0.5, 2, 3, 4), Error);
  }

  TEST_CASE("sector ratios") {
    CHECK(cone_sector_ratio(2, kPi / 4) == doctest::Approx(kPi / 4));
    CHECK(cone_sector_ratio(3, 0.15) == doctest::Approx(2.0 * kPi / 3.0 * (1.0 - std::cos(0.15))).epsilon(1e-14));
    double prev = 1.0;
    for (double a = 1.0; a > 1e-6; a /= 3.0) {
      const double r = cone_sector_ratio(2, a / 2);
      CHECK(r < prev);
      prev = r;
    }
  }

  TEST_CASE("cone_density d = 2 is the exact sector ratio") {
    const SolidCone c(2, kPi / 4);
    const std::vector<double> radii{1.0, 2.0, 5.0};
    const auto cd = cone_density(c, radii, 0.01);
    for (double r : cd.density.ratios) CHECK(r == doctest::Approx(kPi / 4));
    for (double r : cd.lattice.ratios) CHECK(std::abs(r / (kPi / 4) - 1.0) < 0.02);
  }

  TEST_CASE("cone_density d = 3 golden value") {
    // alpha' = 0.3, h = R / 150: 79287 lattice points, ratio 0.0234924444
    const SolidCone c(3, 0.15);
    const std::vector<double> radii{1.0};
    const auto cd = cone_density(c, radii, 1.0 / 150.0);
    CHECK(cd.lattice.counts[0] == 79287);
    CHECK(cd.density.ratios[0] == doctest::Approx(0.023492444444444448).epsilon(1e-12));
    CHECK(cd.meets_floor);
    CHECK(cd.density.ratios[0] >= cd.floor);
    CHECK(cd.floor == doctest::Approx(0.5 * cone_small_angle_constant(3) * 0.09));
  }

  TEST_CASE("lattice kernels agree with an independent count") {
    for (int d = 2; d <= 4; ++d)
      for (double half : {0.05, 0.3, 1.0}) {
        const double radius = d == 4 ? 1.0 : 2.0, h = d == 4 ? 0.1 : 0.05;
        const auto want = lattice_count_oracle(d, half, radius, h);
        CHECK(kernels::cone_lattice_count_serial(d, half, radius, h) == want);
        CHECK(kernels::cone_lattice_count_omp(d, half, radius, h) == want);
        const auto ps = kernels::cone_lattice_points_serial(d, half, radius, h);
        CHECK(ps == kernels::cone_lattice_points_omp(d, half, radius, h));
        CHECK(ps.size() == want * static_cast<std::size_t>(d));
      }
  }

  TEST_CASE("angle lemma threshold and Monte Carlo") {
    // alpha' = 0.01, |x| = 1 on the axis; t = 8 keeps 2^t alpha' / 2 below pi / 2
    const SolidCone c(2, 0.005);
    const auto th = angle_lemma_threshold(c, Point{1, 0}, 8);
    CHECK(std::isfinite(th.m));
    CHECK(th.m > 0.0);
    CHECK(th.scale_radius() == 2.0 * th.m);
    const auto mc = angle_lemma_monte_carlo(c, Point{1, 0}, th.m, th.bound, 1000000, 42);
    CHECK(mc.sample.samples == 1000000);
    CHECK(mc.passed());
    CHECK(mc.sample.max_angle <= 0.01 * 256);

    // off-axis pin in 3 dimensions
    const SolidCone c3(3, 0.02);
    const Point x{2.0, 0.03, 0.0};
    const auto t3 = angle_lemma_threshold(c3, x, 4);
    CHECK(angle_lemma_monte_carlo(c3, x, t3.m, t3.bound, 200000, 43).passed());

    // below the threshold the falsifier does find violations
    const auto low = angle_lemma_monte_carlo(c, Point{1, 0}, 1e-3, th.bound, 100000, 44);
    CHECK_FALSE(low.passed());

    // tightening never exceeds the certified value
    const double tight = tighten_threshold(c, Point{1, 0}, 8, 20000, 45, 12);
    CHECK(tight <= th.m);

    CHECK_THROWS_AS(angle_lemma_threshold(c, Point{0, 1}, 8), Error);
    CHECK_THROWS_AS(angle_lemma_threshold(c, Point{1, 0}, 10), Error);
  }

  TEST_CASE("apex: every pair within alpha'") {
    const SolidCone c(3, 0.01);
    const auto th = angle_lemma_threshold(c, Point{0, 0, 0}, 6);
    CHECK(th.apex);
    CHECK(th.bound == doctest::Approx(0.02));
    const auto mc = angle_lemma_monte_carlo(c, Point{0, 0, 0}, 1.0, th.bound, 200000, 46);
    CHECK(mc.passed());
  }

  TEST_CASE("Monte Carlo serial and OpenMP agree") {
    const SolidCone c(2, 0.01);
    const std::vector<double> x{1.0, 0.0};
    const auto a = kernels::angle_pairs_serial(2, 0.01, x, 5.0, 0.1, 50000, 9);
    const auto b = kernels::angle_pairs_omp(2, 0.01, x, 5.0, 0.1, 50000, 9);
    CHECK(a.violations == b.violations);
    CHECK(a.max_angle == b.max_angle);
    CHECK(a.worst_index == b.worst_index);
  }

  TEST_CASE("scan_pinned_copies on a thin cone") {
    const auto p = ConeParameters::make(kPi / 3, 2, 4, 3);  // alpha' = pi/96, slack pi/12
    const SolidCone c = p.cone();
    const double h = 0.01;
    const Point x{1.0, 0.0};
    const auto th = angle_lemma_threshold(c, x, p.slack_exponent);
    const double s3 = std::sqrt(3.0) / 2.0;
    const Pattern tri = normalize_pattern(Pattern({Point{0, 0}, Point{1, 0}, Point{0.5, s3}}));
    std::vector<double> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(th.scale_radius() * (1.0 + 0.1 * i));
    const auto e = discretize_cone(c, grid.back() + 2.0, h);
    CHECK(scan_pinned_copies(e, x, tri, grid, h).empty());

    // a two-point pattern is realized at most scales
    const Pattern seg({Point{0, 0}, Point{1, 0}});
    std::vector<double> small;
    for (int i = 1; i <= 40; ++i) small.push_back(0.1 * i);
    const auto s = scan_pinned_copies(e, x, seg, small, h);
    CHECK(s.scales.size() >= 35);

    // apex pin: a pattern whose smallest angle exceeds alpha' has no copy at any scale
    const Point apex{0, 0};
    CHECK(scan_pinned_copies(e, apex, tri, small, h).empty());
  }
}
