#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pinpat/geometry.hpp"

namespace pinpat {

struct CatalogSpec {
  int k = 3;
  int d = 2;
  std::uint32_t n = 4;  // n + 1 prime
  double c_d = 1.0;
  double epsilon0 = 1.0;

  void validate() const;
};

// V_i^k: origin, e1, and (cos j theta_i, sin j theta_i, 0, ...) for j = 1..k-2,
// theta_i = 2 pi i / (n + 1).
Pattern catalog_pattern(std::uint32_t i, int k, std::uint32_t n, int d);
std::vector<Pattern> build_catalog(const CatalogSpec& spec);

enum class PrimeSource {
  TheoryWindow,  // smallest prime inside the theorem's open window
  DemoScale,     // window infeasible; smallest prime above the demo floor
  Override,      // caller-supplied rule replaced the window
};

struct PrimeChoice {
  std::uint64_t prime = 0;  // n + 1
  PrimeSource source = PrimeSource::TheoryWindow;
  double window_lo = 0.0;   // +inf when not representable
  double window_hi = 0.0;
  double log4_hi = 0.0;     // ln ln ln ln of the upper window bound (k >= 4, window beyond double range)
  bool out_of_theory_window() const { return source != PrimeSource::TheoryWindow; }
  std::uint32_t n() const { return static_cast<std::uint32_t>(prime - 1); }
};

const char* prime_source_name(PrimeSource s);

// k = 3: smallest prime in (20 pi C_d / eps0, 60 pi C_d / eps0).
// k >= 4: the exp-exp window, evaluated in log space; beyond cap -> DemoScale above demo_floor.
PrimeChoice select_prime(int k, int d, double epsilon0, double c_d, double cap = kPrimeFeasibilityCap,
                         std::uint64_t demo_floor = 100);

// Smallest prime > 2 pi / alpha' + 1 so that the catalog step angle undercuts alpha'.
PrimeChoice override_prime_for_angle(double alpha_prime);

// Positive real that may be far below double range.
// depth 0: value = exp(log).
// depth >= 1: value = exp(-exp^{depth}(top)) / exp(log_divisor), exp^{j} being j-fold exp.
struct LogReal {
  int depth = 0;
  long double log = 0.0L;
  long double top = 0.0L;
  long double log_divisor = 0.0L;
  std::optional<double> linear() const;  // value if it is a normal double
  std::string describe() const;
};

struct TheoremConstants {
  int k = 3;
  int d = 2;
  double c_d = 1.0;
  double epsilon0 = 1.0;
  LogReal epsilon;
  double m_d = 0.0;
  LogReal epsilon_tilde;
  std::uint32_t c_exponent = 0;  // c_{k-1} = 2^{-2^{c_exponent}}, c_exponent = k + 8
};

TheoremConstants theorem_constants(int k, int d, double epsilon0, double c_d);

}  // namespace pinpat
