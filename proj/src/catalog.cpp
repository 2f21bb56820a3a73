#include "pinpat/catalog.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pinpat/errors.hpp"
#include "pinpat/torus_ap.hpp"

namespace pinpat {

void CatalogSpec::validate() const {
  require(k >= 3, ErrorCode::BadLength, "k must be >= 3");
  require(d >= 2 && d <= kMaxDim, ErrorCode::BadDimension, "d out of range");
  require(is_prime(static_cast<std::uint64_t>(n) + 1), ErrorCode::NotPrime, "n + 1 must be prime");
  require(n >= static_cast<std::uint32_t>(k), ErrorCode::DomainError, "n must be >= k");
  require(c_d > 0.0, ErrorCode::InvalidArgument, "C_d must be positive");
  require(epsilon0 > 0.0 && epsilon0 <= 1.0, ErrorCode::InvalidArgument, "epsilon0 must lie in (0, 1]");
}

Pattern catalog_pattern(std::uint32_t i, int k, std::uint32_t n, int d) {
  require(k >= 3, ErrorCode::BadLength, "k must be >= 3");
  require(i >= 1 && i <= n, ErrorCode::InvalidArgument, "pattern index must lie in 1..n");
  require(d >= 2, ErrorCode::BadDimension, "d must be >= 2");
  const std::uint64_t mod = static_cast<std::uint64_t>(n) + 1;
  std::vector<Point> pts{Point::zero(d), Point::unit(d, 0)};
  for (int j = 1; j <= k - 2; ++j) {
    // reduce j * i mod (n + 1) before scaling to keep the angle exact
    const double theta = kTwoPi * static_cast<double>((static_cast<std::uint64_t>(j) * i) % mod) / static_cast<double>(mod);
    std::vector<double> c(static_cast<std::size_t>(d), 0.0);
    c[0] = std::cos(theta);
    c[1] = std::sin(theta);
    pts.emplace_back(std::move(c));
  }
  return Pattern(std::move(pts));
}

std::vector<Pattern> build_catalog(const CatalogSpec& spec) {
  spec.validate();
  std::vector<Pattern> out;
  out.reserve(spec.n);
  for (std::uint32_t i = 1; i <= spec.n; ++i) out.push_back(catalog_pattern(i, spec.k, spec.n, spec.d));
  return out;
}

const char* prime_source_name(PrimeSource s) {
  switch (s) {
    case PrimeSource::TheoryWindow: return "theory_window";
    case PrimeSource::DemoScale: return "demo_scale";
    case PrimeSource::Override: return "override";
  }
  return "unknown";
}

namespace {
std::uint64_t smallest_prime_in(double lo, double hi) {
  // strictly inside (lo, hi)
  double start = std::floor(lo) + 1.0;
  if (start < 2.0) start = 2.0;
  for (double p = start; p < hi; p += 1.0)
    if (is_prime(static_cast<std::uint64_t>(p))) return static_cast<std::uint64_t>(p);
  return 0;
}

void check_theory_inputs(int k, int d, double epsilon0, double c_d) {
  require(k >= 3, ErrorCode::BadLength, "k must be >= 3");
  require(d >= 2, ErrorCode::BadDimension, "d must be >= 2");
  require(epsilon0 > 0.0 && epsilon0 <= 1.0, ErrorCode::InvalidArgument, "epsilon0 must lie in (0, 1]");
  require(c_d > 0.0 && std::isfinite(c_d), ErrorCode::InvalidArgument, "C_d must be positive");
}

// ln(1 / c_{k-1}) = 2^{k+8} ln 2
long double log_inverse_c(int k) { return std::ldexp(1.0L, k + 8) * std::log(2.0L); }
}  // namespace

PrimeChoice select_prime(int k, int d, double epsilon0, double c_d, double cap, std::uint64_t demo_floor) {
  check_theory_inputs(k, d, epsilon0, c_d);
  PrimeChoice out;
  const double base = 20.0 * kPi * c_d / epsilon0;
  if (k == 3) {
    out.window_lo = base;
    out.window_hi = 3.0 * base;
    out.prime = smallest_prime_in(out.window_lo, out.window_hi);
    if (out.prime == 0) fail(ErrorCode::WindowEmpty, "no prime inside the window");
    return out;
  }
  // window (exp exp X / 3, exp exp X), X = base^{1/c_{k-1}}
  const long double a = std::log(static_cast<long double>(base));
  double upper = std::numeric_limits<double>::infinity();
  if (a <= 0.0L) {
    // X = exp(a / c) underflows to 0 for a < 0, equals 1 for a = 0
    const long double x = a == 0.0L ? 1.0L : 0.0L;
    upper = static_cast<double>(std::exp(std::exp(x)));
    out.log4_hi = -std::numeric_limits<double>::infinity();
  } else {
    const long double lnln_x = std::log(a) + log_inverse_c(k);
    out.log4_hi = static_cast<double>(lnln_x);
    if (lnln_x < 8.0L) {
      const long double x = std::exp(std::exp(lnln_x));
      if (x < 11000.0L) upper = static_cast<double>(std::exp(std::exp(x)));
    }
  }
  out.window_hi = upper;
  out.window_lo = upper / 3.0;
  if (std::isfinite(upper) && upper <= cap) {
    out.prime = smallest_prime_in(out.window_lo, out.window_hi);
    if (out.prime != 0) return out;
  }
  out.source = PrimeSource::DemoScale;
  out.prime = next_prime_above(demo_floor);
  return out;
}

PrimeChoice override_prime_for_angle(double alpha_prime) {
  require(alpha_prime > 0.0 && alpha_prime < kPi, ErrorCode::InvalidArgument, "alpha' must lie in (0, pi)");
  PrimeChoice out;
  out.source = PrimeSource::Override;
  const double floor_value = kTwoPi / alpha_prime + 1.0;
  require(floor_value < 4.0e9, ErrorCode::TooLarge, "alpha' too small for a 32-bit catalog");
  out.window_lo = floor_value;
  out.window_hi = std::numeric_limits<double>::infinity();
  out.prime = next_prime_above(static_cast<std::uint64_t>(std::floor(floor_value)));
  return out;
}

std::optional<double> LogReal::linear() const {
  if (depth != 0) return std::nullopt;
  const long double v = std::exp(log);
  if (!(v >= static_cast<long double>(DBL_MIN) && v <= static_cast<long double>(DBL_MAX))) return std::nullopt;
  return static_cast<double>(v);
}

std::string LogReal::describe() const {
  char buf[160];
  if (depth == 0) {
    std::snprintf(buf, sizeof buf, "exp(%.17Lg)", log);
    return buf;
  }
  std::string inner;
  std::snprintf(buf, sizeof buf, "%.17Lg", top);
  inner = buf;
  for (int j = 0; j < depth; ++j) inner = "exp(" + inner + ")";
  std::string s = "exp(-" + inner + ")";
  if (log_divisor != 0.0L) {
    std::snprintf(buf, sizeof buf, " / exp(%.17Lg)", log_divisor);
    s += buf;
  }
  return s;
}

TheoremConstants theorem_constants(int k, int d, double epsilon0, double c_d) {
  check_theory_inputs(k, d, epsilon0, c_d);
  TheoremConstants t;
  t.k = k;
  t.d = d;
  t.c_d = c_d;
  t.epsilon0 = epsilon0;
  t.c_exponent = static_cast<std::uint32_t>(k + 8);
  if (k == 3) {
    t.m_d = 1e10 * kPi * c_d * c_d;
    t.epsilon.log = 2.0L * std::log(static_cast<long double>(epsilon0));
    t.epsilon_tilde.log = t.epsilon.log - std::log(static_cast<long double>(t.m_d));
    return t;
  }
  t.m_d = 10.0 * c_d;
  // epsilon = exp(-exp(X)), X = (20 C_d pi / eps0)^{1/c_{k-1}}
  const long double a = std::log(20.0L * static_cast<long double>(kPi) * c_d / epsilon0);
  if (a <= 0.0L) {
    const long double x = a == 0.0L ? 1.0L : 0.0L;
    t.epsilon.log = -std::exp(x);
    t.epsilon_tilde.log = t.epsilon.log - std::log(static_cast<long double>(t.m_d));
    return t;
  }
  // -ln eps = exp(X) = exp(exp(exp(ln ln X))), ln X = a / c_{k-1}, so ln ln X = ln a + 2^{k+8} ln 2
  const long double lnln_x = std::log(a) + log_inverse_c(k);
  t.epsilon.depth = 3;
  t.epsilon.top = lnln_x;
  t.epsilon_tilde = t.epsilon;
  t.epsilon_tilde.log_divisor = std::log(static_cast<long double>(t.m_d));
  return t;
}

}  // namespace pinpat
