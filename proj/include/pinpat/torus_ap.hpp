#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pinpat/cyclic.hpp"
#include "pinpat/torus.hpp"

namespace pinpat {

bool is_prime(std::uint64_t n);
std::uint64_t next_prime_above(std::uint64_t n);  // smallest prime > n

// Orbit {base + j * 2pi * step / modulus : j = 0..length-1} on the circle.
struct TorusAP {
  double base = 0.0;
  std::uint32_t step = 0;     // i
  std::uint32_t modulus = 0;  // n + 1
  std::uint32_t length = 0;   // k - 1
  std::vector<double> points() const;
};

// A witness (x, i) with x, x + delta_i, ..., x + (k-2) delta_i all in E, or none.
std::optional<TorusAP> avoids_rotated_aps(const TorusSet& e, std::uint32_t n, int k);

// {tau : x + 2 pi tau / (n+1) in E}; composite n+1 allowed.
CyclicSet slice(const TorusSet& e, double x, std::uint32_t n);

struct SlicingIdentity {
  double lhs = 0.0;  // L^1(E)
  double rhs = 0.0;  // integral of #slice over the window
};
SlicingIdentity slicing_identity_check(const TorusSet& e, std::uint32_t n, int quadrature_points);

// Cells of the window [0, 2pi/(n+1)) on which #slice(E, x) is constant.
struct SliceCell {
  double lo = 0.0, hi = 0.0;
  double sample = 0.0;  // interior point used for the slice
  CyclicSet slice;
};
std::vector<SliceCell> window_cells(const TorusSet& e, std::uint32_t n, double min_width = kTolerances.sliver);

struct MeasureBound {
  double measure = 0.0;
  double bound = 0.0;
  long double log_bound = 0.0L;  // ln(bound), exact even when bound is tiny
  bool ok = false;
};
MeasureBound measure_bound_check(const TorusSet& e, std::uint32_t n, int k, const Tolerances& tol = kTolerances);

}  // namespace pinpat
