#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pinpat/config.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat {

// Subset of Z/NZ as a fixed-width bit array.
class CyclicSet {
 public:
  CyclicSet() = default;
  explicit CyclicSet(std::uint32_t modulus);
  static CyclicSet full(std::uint32_t modulus);
  static CyclicSet from_members(std::uint32_t modulus, const std::vector<std::uint32_t>& members);

  std::uint32_t modulus() const { return n_; }
  bool contains(std::uint32_t x) const { return (w_[x >> 6] >> (x & 63)) & 1u; }
  void insert(std::uint32_t x);
  void erase(std::uint32_t x);
  std::uint32_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::uint32_t> members() const;
  std::optional<std::uint32_t> first() const;

  // {s + t mod N : s in S}
  CyclicSet shifted(std::uint32_t t) const;
  CyclicSet operator&(const CyclicSet& o) const;
  bool operator==(const CyclicSet& o) const = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct CyclicAP {
  std::uint32_t modulus = 0;
  std::uint32_t base = 0;
  std::uint32_t diff = 0;
  std::uint32_t length = 0;
  std::vector<std::uint32_t> elements() const;
};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Some m-term AP inside S, or none if S is m-AP-free. Differences d with
// fewer than m distinct terms (N / gcd(d, N) < m) are skipped.
std::optional<CyclicAP> has_ap(const CyclicSet& s, int m);
// Reference implementation: plain loop over (a, d).
std::optional<CyclicAP> has_ap_naive(const CyclicSet& s, int m);

struct RmResult {
  std::uint32_t size = 0;
  CyclicSet witness;
  std::uint64_t nodes = 0;  // search nodes visited (diagnostic only)
};

// Exact r_m(Z/NZ) by branch and bound with 0 forced into the set.
RmResult r_m_exact(std::uint32_t n, int m, int exact_limit = kDefaultExactLimit, Exec exec = Exec::parallel);

// log-space value of N / (ln ln N)^{c_m}, c_m = 2^{-2^{m+9}}
struct GowersBound {
  int m = 0;
  std::uint64_t n = 0;
  bool trivial = false;        // m == 2: the bound is 1
  std::uint32_t exponent = 0;  // c_m = 2^{-2^{exponent}}, exponent = m + 9
  long double log_deficit = 0; // ln(c_m * ln ln ln N); deficit = ln N - ln(bound)
  long double log_value = 0;   // ln(bound)
  double value = 0;
};

GowersBound gowers_bound_log(std::uint64_t n, int m);
double gowers_bound(std::uint64_t n, int m);

}  // namespace pinpat
