#include "pinpat/cyclic.hpp"

#include <bit>
#include <cmath>

#include "pinpat/errors.hpp"

namespace pinpat {

CyclicSet::CyclicSet(std::uint32_t modulus) : n_(modulus), w_((modulus + 63) / 64, 0) {
  require(modulus >= 2, ErrorCode::InvalidArgument, "modulus must be >= 2");
}

CyclicSet CyclicSet::full(std::uint32_t modulus) {
  CyclicSet s(modulus);
  for (std::uint32_t x = 0; x < modulus; ++x) s.insert(x);
  return s;
}

CyclicSet CyclicSet::from_members(std::uint32_t modulus, const std::vector<std::uint32_t>& members) {
  CyclicSet s(modulus);
  for (auto x : members) s.insert(x % modulus);
  return s;
}

void CyclicSet::insert(std::uint32_t x) {
  require(x < n_, ErrorCode::InvalidArgument, "residue out of range");
  w_[x >> 6] |= std::uint64_t{1} << (x & 63);
}

void CyclicSet::erase(std::uint32_t x) {
  require(x < n_, ErrorCode::InvalidArgument, "residue out of range");
  w_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
}

std::uint32_t CyclicSet::size() const {
  std::uint32_t c = 0;
  for (auto w : w_) c += static_cast<std::uint32_t>(std::popcount(w));
  return c;
}

std::vector<std::uint32_t> CyclicSet::members() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    std::uint64_t w = w_[i];
    while (w) {
      out.push_back(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

std::optional<std::uint32_t> CyclicSet::first() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i])));
  return std::nullopt;
}

CyclicSet CyclicSet::shifted(std::uint32_t t) const {
  CyclicSet out(n_);
  t %= n_;
  for (auto x : members()) out.insert((x + t) % n_);
  return out;
}

CyclicSet CyclicSet::operator&(const CyclicSet& o) const {
  require(n_ == o.n_, ErrorCode::InvalidArgument, "moduli differ");
  CyclicSet out(*this);
  for (std::size_t i = 0; i < w_.size(); ++i) out.w_[i] &= o.w_[i];
  return out;
}

std::vector<std::uint32_t> CyclicAP::elements() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 0; j < length; ++j)
    out.push_back(static_cast<std::uint32_t>((base + static_cast<std::uint64_t>(j) * diff) % modulus));
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

namespace {
void check_ap_args(const CyclicSet& s, int m) {
  require(m >= 2, ErrorCode::BadLength, "AP length must be >= 2");
  require(s.modulus() >= static_cast<std::uint32_t>(m), ErrorCode::BadLength, "AP length exceeds modulus");
}
}  // namespace

std::optional<CyclicAP> has_ap(const CyclicSet& s, int m) {
  check_ap_args(s, m);
  const std::uint32_t n = s.modulus();
  const std::uint32_t len = static_cast<std::uint32_t>(m);
  if (s.size() < len) return std::nullopt;
  std::optional<CyclicAP> best;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n / gcd_u64(d, n) < len) continue;
    // T = {a : a + j d in S for all j} = intersection of S - j d
    CyclicSet t = s;
    for (std::uint32_t j = 1; j < len && !t.empty(); ++j)
      t = t & s.shifted(static_cast<std::uint32_t>(n - (static_cast<std::uint64_t>(j) * d) % n));
    if (auto a = t.first()) {
      CyclicAP w{n, *a, d, len};
      if (!best || w.base < best->base) best = w;
      if (best->base == 0) break;
    }
  }
  return best;
}

std::optional<CyclicAP> has_ap_naive(const CyclicSet& s, int m) {
  check_ap_args(s, m);
  const std::uint32_t n = s.modulus();
  for (std::uint32_t a = 0; a < n; ++a) {
    if (!s.contains(a)) continue;
    for (std::uint32_t d = 1; d < n; ++d) {
      std::vector<bool> seen(n, false);
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) {
        const auto e = static_cast<std::uint32_t>((a + static_cast<std::uint64_t>(j) * d) % n);
        ok = s.contains(e) && !seen[e];
        seen[e] = true;
      }
      if (ok) return CyclicAP{n, a, d, static_cast<std::uint32_t>(m)};
    }
  }
  return std::nullopt;
}

GowersBound gowers_bound_log(std::uint64_t n, int m) {
  require(m >= 2, ErrorCode::BadLength, "m must be >= 2");
  GowersBound g;
  g.m = m;
  g.n = n;
  g.exponent = static_cast<std::uint32_t>(m + 9);
  if (m == 2) {
    g.trivial = true;
    g.value = 1.0;
    g.log_value = 0.0L;
    return g;
  }
  require(n >= 2, ErrorCode::DomainError, "N must be >= 2");
  const long double ln_n = std::log(static_cast<long double>(n));
  const long double lnln = std::log(ln_n);
  // (ln ln N)^{c_m} is only a meaningful divisor once ln ln N >= 1
  if (!(lnln >= 1.0L)) fail(ErrorCode::DomainError, "ln ln N < 1: the bound is undefined for this N");
  const long double lnlnln = std::log(lnln);
  // c_m = 2^{-2^{m+9}}; ln c_m = -2^{m+9} ln 2, far below double range for m >= 3
  const long double ln_c = -std::ldexp(1.0L, m + 9) * std::log(2.0L);
  g.log_deficit = lnlnln > 0 ? ln_c + std::log(lnlnln) : -INFINITY;
  const long double deficit = std::exp(g.log_deficit);  // 0 once below long double range
  g.log_value = ln_n - deficit;
  g.value = static_cast<double>(std::exp(g.log_value));
  return g;
}

double gowers_bound(std::uint64_t n, int m) { return gowers_bound_log(n, m).value; }

}  // namespace pinpat
