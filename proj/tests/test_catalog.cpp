#include <doctest.h>

#include <cmath>

#include "pinpat/catalog.hpp"
#include "pinpat/errors.hpp"
#include "pinpat/torus_ap.hpp"

using namespace pinpat;

namespace {

bool prime_oracle(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t first_prime_above(double lo) {
  auto p = static_cast<std::uint64_t>(std::floor(lo)) + 1;
  while (!prime_oracle(p)) ++p;
  return p;
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("catalog pattern examples") {
    const Pattern v = catalog_pattern(1, 3, 4, 2);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == Point{0, 0});
    CHECK(v[1] == Point{1, 0});
    CHECK(v[2][0] == doctest::Approx(std::cos(72.0 * kPi / 180.0)).epsilon(1e-15));
    CHECK(v[2][1] == doctest::Approx(std::sin(72.0 * kPi / 180.0)).epsilon(1e-15));

    const Pattern w = catalog_pattern(1, 4, 10, 3);
    REQUIRE(w.size() == 4);
    CHECK(std::atan2(w[2][1], w[2][0]) == doctest::Approx(kTwoPi / 11).epsilon(1e-14));
    CHECK(std::atan2(w[3][1], w[3][0]) == doctest::Approx(2 * kTwoPi / 11).epsilon(1e-14));
    CHECK(w[3][2] == 0.0);
  }

  TEST_CASE("every catalog pattern: origin, e1, unit circle, equal gaps") {
    for (int d = 2; d <= 4; ++d)
      for (int k = 3; k <= 5; ++k) {
        CatalogSpec spec;
        spec.k = k;
        spec.d = d;
        spec.n = 12;
        const auto cat = build_catalog(spec);
        REQUIRE(cat.size() == 12);
        for (std::uint32_t i = 1; i <= 12; ++i) {
          const Pattern& v = cat[i - 1];
          REQUIRE(v.size() == k);
          REQUIRE(v[0].is_zero());
          REQUIRE(v[1] == Point::unit(d, 0));
          const double gap = kTwoPi * i / 13.0;
          for (int j = 1; j < k; ++j) {
            REQUIRE(std::abs(v[j].norm() - 1.0) <= 1e-12);
            for (int c = 2; c < d; ++c) REQUIRE(v[j][c] == 0.0);
            if (j >= 2) {
              const double step = std::atan2(v[j][1], v[j][0]) - std::atan2(v[j - 1][1], v[j - 1][0]);
              REQUIRE(std::abs(std::remainder(step - gap, kTwoPi)) <= 1e-12);
            }
          }
        }
        CHECK(build_catalog(spec)[5].points() == cat[5].points());
      }
  }

  TEST_CASE("CatalogSpec validation") {
    CatalogSpec s;
    s.n = 5;  // 6 composite
    CHECK_THROWS_AS(s.validate(), Error);
    s.n = 10;
    s.k = 11;  // n < k
    CHECK_THROWS_AS(s.validate(), Error);
    s.k = 3;
    s.c_d = 0.0;
    CHECK_THROWS_AS(s.validate(), Error);
  }

  TEST_CASE("select_prime k = 3") {
    auto p = select_prime(3, 2, 1.0, 1.0);
    CHECK(p.prime == 67);
    CHECK_FALSE(p.out_of_theory_window());
    CHECK(p.window_lo == doctest::Approx(20 * kPi));
    CHECK(p.window_hi == doctest::Approx(60 * kPi));
    CHECK(select_prime(3, 2, 0.5, 1.0).prime == 127);
    for (double e0 : {1.0, 0.5, 0.2, 0.1, 0.05}) {
      const auto q = select_prime(3, 2, e0, 1.0);
      CHECK(q.prime == first_prime_above(20 * kPi / e0));
      CHECK(static_cast<double>(q.prime) > 20 * kPi / e0);
      CHECK(static_cast<double>(q.prime) < 60 * kPi / e0);
    }
  }

  TEST_CASE("select_prime k >= 4 falls back to demo scale") {
    const auto p = select_prime(4, 2, 0.5, 1.0);
    CHECK(p.source == PrimeSource::DemoScale);
    CHECK(p.out_of_theory_window());
    CHECK(std::isinf(p.window_hi));
    // ln ln ln ln of the upper end: ln ln (40 pi) + 2^12 ln 2
    CHECK(p.log4_hi == doctest::Approx(std::log(std::log(40 * kPi)) + 4096 * std::log(2.0)).epsilon(1e-12));
    CHECK(p.prime == 101);
    CHECK(select_prime(5, 2, 1.0, 1.0, 1e7, 1000).prime == 1009);
  }

  TEST_CASE("override prime for the cone aperture") {
    const double ap = kPi / 12288;
    const auto p = override_prime_for_angle(ap);
    CHECK(p.source == PrimeSource::Override);
    CHECK(p.prime == first_prime_above(kTwoPi / ap + 1.0));
    CHECK(p.prime == 24593);
    CHECK(kTwoPi / static_cast<double>(p.prime) < ap);
  }

  TEST_CASE("theorem constants") {
    const auto t = theorem_constants(3, 2, 0.1, 1.0);
    CHECK(t.epsilon.linear().value() == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(t.m_d == doctest::Approx(1e10 * kPi));
    CHECK(t.epsilon_tilde.linear().value() == doctest::Approx(0.01 / (1e10 * kPi)).epsilon(1e-12));
    CHECK(t.c_exponent == 11);

    const auto t2 = theorem_constants(3, 2, 0.1, 2.0);
    CHECK(t2.epsilon.linear().value() == doctest::Approx(t.epsilon.linear().value()));
    CHECK(t2.m_d == doctest::Approx(4 * t.m_d));
    CHECK(t2.epsilon_tilde.linear().value() == doctest::Approx(t.epsilon_tilde.linear().value() / 4));

    const auto t4 = theorem_constants(4, 2, 1.0, 1.0);
    CHECK(t4.c_exponent == 12);
    CHECK(t4.m_d == doctest::Approx(10.0));
    CHECK(t4.epsilon.depth == 3);
    CHECK_FALSE(t4.epsilon.linear());
    CHECK(static_cast<double>(t4.epsilon.top) ==
          doctest::Approx(std::log(std::log(20 * kPi)) + 4096 * std::log(2.0)).epsilon(1e-12));
    CHECK(t4.epsilon.describe().rfind("exp(-exp(exp(exp(", 0) == 0);
  }
}
