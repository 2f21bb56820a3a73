#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pinpat/density.hpp"
#include "pinpat/discretized_set.hpp"
#include "pinpat/errors.hpp"
#include "pinpat/lab/generators.hpp"
#include "pinpat/parallel.hpp"
#include "support/suites.hpp"

using namespace pinpat;

TEST_SUITE("geometry_core") {
  TEST_CASE("spatial index returns exactly the points in a ball") {
    auto rng = make_rng(11, 1);
    for (int d = 2; d <= 4; ++d) {
      std::vector<Point> pts;
      for (int i = 0; i < 400; ++i) pts.push_back(pinpat::testing::random_point(rng, d, 3.0));
      const auto s = DiscretizedSet::from_points(pts, 0.37);
      for (int q = 0; q < 60; ++q) {
        const Point c = pinpat::testing::random_point(rng, d, 4.0);
        const double radius = 0.05 + 0.02 * q;
        auto got = s.query_ball(c, radius);
        std::sort(got.begin(), got.end());
        std::vector<std::uint32_t> want;
        for (std::uint32_t i = 0; i < pts.size(); ++i)
          if (distance(pts[i], c) <= radius) want.push_back(i);
        REQUIRE(got == want);
      }
    }
  }

  TEST_CASE("membership is thickness based") {
    const auto s = DiscretizedSet::from_points({Point{0, 0}, Point{1, 0}}, 0.2);
    CHECK(s.thickness() == 0.1);
    CHECK(s.contains(Point{1.09, 0}));
    CHECK_FALSE(s.contains(Point{1.11, 0}));
    CHECK(s.bounding_radius() == 1.0);
    CHECK(std::isinf(s.nearest_distance(Point{5, 5}, 1.0)));
  }

  TEST_CASE("upper_density_1d examples") {
    std::vector<std::pair<double, double>> iv;
    for (int k = 0; k < 60; ++k) iv.emplace_back(2.0 * k, 2.0 * k + 1.0);
    const std::vector<double> r100{100.0};
    CHECK(upper_density_1d(IntervalUnion(iv), r100).ratios[0] == doctest::Approx(0.5).epsilon(1e-15));

    const std::vector<double> radii{10.0, 100.0};
    const auto d = upper_density_1d(IntervalUnion({{0.0, 1.0}}), radii);
    CHECK(d.ratios[0] == doctest::Approx(0.1));
    CHECK(d.ratios[1] == doctest::Approx(0.01));
    CHECK(d.sup_ratio == doctest::Approx(0.1));

    CHECK_THROWS_AS(upper_density_1d(IntervalUnion({{0.0, 1.0}}), std::vector<double>{}), Error);
  }

  TEST_CASE("fattened points merge overlapping neighbours") {
    const std::vector<double> pts{0.0, 0.5, 0.7, 3.0};
    const auto u = IntervalUnion::fattened(pts, 0.25);
    CHECK(u.intervals().size() == 2);
    CHECK(u.measure() == doctest::Approx(1.2 + 0.5));
    CHECK(u.measure_in(0.0, 1.0) == doctest::Approx(0.95));
  }

  TEST_CASE("upper_density_nd examples") {
    // disk counting: L^2(B(0,R)) / R^2 = pi
    const double radius = 1.0;
    const auto disk = lab::grid_ball(2, radius, radius / 200.0);
    const std::vector<double> rr{radius};
    CHECK(std::abs(upper_density_nd(disk, rr).ratios[0] / kPi - 1.0) <= 0.02);

    const DiscretizedSet empty(2, {}, 0.1);
    CHECK(upper_density_nd(empty, rr).sup_ratio == 0.0);

    // sector of aperture a: (a/2) R^2 / R^2
    const double a = 0.5;
    std::vector<double> flat;
    const double h = 1.0 / 400.0;
    for (int i = 0; i <= 400; ++i)
      for (int j = -400; j <= 400; ++j) {
        const double x = i * h, y = j * h;
        if (x * x + y * y <= 1.0 && std::abs(std::atan2(y, x)) <= a / 2) flat.insert(flat.end(), {x, y});
      }
    const DiscretizedSet sector(2, flat, h);
    CHECK(std::abs(upper_density_nd(sector, rr).ratios[0] / (a / 2) - 1.0) <= 0.02);
  }

  TEST_CASE("density is translation stable within 3 h d / R") {
    auto rng = make_rng(11, 2);
    const double h = 0.05;
    const auto a = lab::random_union(2, 10.0, 15, 1.5, h, 3);
    const std::vector<double> radii{4.0, 6.0, 8.0, 10.0};
    for (int t = 0; t < 10; ++t) {
      const Point shift = pinpat::testing::random_point(rng, 2, 0.3);
      // the two balls differ by at most 4 |x| R in area, hence the |x| term
      const auto moved = a.translated(-shift);
      const auto d0 = upper_density_nd(a, radii), d1 = upper_density_nd(moved, radii);
      for (std::size_t i = 0; i < radii.size(); ++i)
        CHECK(std::abs(d0.ratios[i] - d1.ratios[i]) <= 3.0 * h * 2 / radii[i] + 2.0 * shift.norm() * kPi / radii[i]);
    }
  }

  TEST_CASE("density ratios ignore point order") {
    auto rng = make_rng(11, 3);
    const auto a = lab::random_union(3, 4.0, 6, 1.0, 0.2, 5);
    std::vector<std::size_t> perm(a.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> flat;
    for (auto i : perm) flat.insert(flat.end(), a.point(i).begin(), a.point(i).end());
    const DiscretizedSet b(3, flat, a.pitch());
    const std::vector<double> radii{1.0, 2.0, 3.0, 4.0};
    CHECK(upper_density_nd(a, radii).ratios == upper_density_nd(b, radii).ratios);
    CHECK(upper_density_nd(a, radii, Exec::serial).ratios == upper_density_nd(a, radii, Exec::parallel).ratios);
  }

  TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(2) == doctest::Approx(kPi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));
    CHECK(unit_ball_volume(4) == doctest::Approx(kPi * kPi / 2.0));
  }
}
