#include "pinpat/torus_ap.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pinpat/errors.hpp"

namespace pinpat {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

std::uint64_t next_prime_above(std::uint64_t n) {
  std::uint64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

namespace {

// 2 pi * (r / modulus), reduced from an exact residue to limit rounding
double orbit_angle(std::uint64_t r, std::uint32_t modulus) {
  return kTwoPi * static_cast<double>(r % modulus) / static_cast<double>(modulus);
}

void check_prime_modulus(std::uint32_t n) {
  require(is_prime(static_cast<std::uint64_t>(n) + 1), ErrorCode::NotPrime, "n + 1 must be prime");
}

// Arc endpoints reduced into the window: #slice is constant between them.
std::vector<double> window_cuts(const TorusSet& e, double window) {
  std::vector<double> cuts{0.0, window};
  for (const Arc& a : e.arcs())
    for (double end : {a.lo, a.hi}) {
      const double r = end - window * std::floor(end / window);
      cuts.push_back(std::clamp(r, 0.0, window));
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

std::vector<double> TorusAP::points() const {
  std::vector<double> out;
  for (std::uint32_t j = 0; j < length; ++j)
    out.push_back(wrap_angle(base + orbit_angle(static_cast<std::uint64_t>(j) * step, modulus)));
  return out;
}

std::optional<TorusAP> avoids_rotated_aps(const TorusSet& e, std::uint32_t n, int k) {
  check_prime_modulus(n);
  require(k >= 3, ErrorCode::BadLength, "k must be >= 3");
  require(n >= static_cast<std::uint32_t>(k), ErrorCode::DomainError, "n must be >= k");
  if (e.empty()) return std::nullopt;
  const std::uint32_t mod = n + 1;
  const auto len = static_cast<std::uint32_t>(k - 1);
  for (std::uint32_t i = 1; i <= n; ++i) {
    TorusSet inter = e;
    for (std::uint32_t j = 1; j < len && !inter.empty(); ++j)
      inter = inter.intersect(e.shifted(-orbit_angle(static_cast<std::uint64_t>(j) * i, mod)));
    if (inter.empty()) continue;
    std::vector<Arc> cand = inter.arcs();
    std::stable_sort(cand.begin(), cand.end(), [](const Arc& a, const Arc& b) { return a.length() > b.length(); });
    for (const Arc& a : cand) {
      TorusAP w{wrap_angle(0.5 * (a.lo + a.hi)), i, mod, len};
      const auto pts = w.points();
      bool inside = true;
      for (double p : pts) inside = inside && e.contains(p);
      if (!inside) continue;  // rounding sliver, not a real orbit
      // n + 1 prime makes the residues j * i distinct, hence the points
      for (std::uint32_t a1 = 0; a1 < len; ++a1)
        for (std::uint32_t a2 = a1 + 1; a2 < len; ++a2)
          require((static_cast<std::uint64_t>(a1) * i) % mod != (static_cast<std::uint64_t>(a2) * i) % mod,
                  ErrorCode::PreconditionViolated, "orbit points coincide");
      return w;
    }
  }
  return std::nullopt;
}

CyclicSet slice(const TorusSet& e, double x, std::uint32_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  const std::uint32_t mod = n + 1;
  const double window = kTwoPi / static_cast<double>(mod);
  if (!(x >= 0.0 && x < window)) fail(ErrorCode::OutOfWindow, "x must lie in [0, 2pi/(n+1))");
  CyclicSet s(mod);
  for (std::uint32_t t = 0; t < mod; ++t)
    if (e.contains(x + orbit_angle(t, mod))) s.insert(t);
  return s;
}

std::vector<SliceCell> window_cells(const TorusSet& e, std::uint32_t n, double min_width) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  const double window = kTwoPi / static_cast<double>(n + 1);
  const std::vector<double> cuts = window_cuts(e, window);
  std::vector<SliceCell> cells;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c], hi = cuts[c + 1];
    if (!(hi - lo > min_width)) continue;
    const double mid = 0.5 * (lo + hi);
    cells.push_back({lo, hi, mid, slice(e, mid, n)});
  }
  return cells;
}

SlicingIdentity slicing_identity_check(const TorusSet& e, std::uint32_t n, int quadrature_points) {
  require(quadrature_points >= 1, ErrorCode::InvalidArgument, "quadrature_points must be >= 1");
  SlicingIdentity out;
  out.lhs = e.measure();
  const double window = kTwoPi / static_cast<double>(n + 1);
  const std::vector<double> cuts = window_cuts(e, window);
  // integrand is constant on each cell; take the modal count over the sample points
  double sum = 0.0, comp = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c], hi = cuts[c + 1];
    if (!(hi > lo)) continue;
    std::map<std::uint32_t, int> votes;
    for (int q = 0; q < quadrature_points; ++q) {
      const double x = lo + (hi - lo) * (q + 0.5) / quadrature_points;
      if (x >= window) continue;
      ++votes[slice(e, x, n).size()];
    }
    std::uint32_t count = 0;
    int top = -1;
    for (const auto& [v, c2] : votes)
      if (c2 > top) {
        top = c2;
        count = v;
      }
    const double term = static_cast<double>(count) * (hi - lo) - comp;
    const double t = sum + term;
    comp = (t - sum) - term;
    sum = t;
  }
  out.rhs = sum;
  return out;
}

MeasureBound measure_bound_check(const TorusSet& e, std::uint32_t n, int k, const Tolerances& tol) {
  if (avoids_rotated_aps(e, n, k))
    fail(ErrorCode::PreconditionViolated, "the set contains a rotated progression");
  MeasureBound out;
  out.measure = e.measure();
  const long double ln_two_pi = std::log(static_cast<long double>(kTwoPi));
  const long double ln_mod = std::log(static_cast<long double>(n) + 1.0L);
  if (k == 3) {
    out.log_bound = ln_two_pi - ln_mod;
  } else {
    // 2pi / (ln ln (n+1))^{c_{k-1}}, c_{k-1} = 2^{-2^{k+8}}
    const long double lnln = std::log(ln_mod);
    require(lnln > 0.0L, ErrorCode::DomainError, "ln ln (n+1) must be positive");
    const long double lnlnln = std::log(lnln);
    const long double ln_c = -std::ldexp(1.0L, k + 8) * std::log(2.0L);
    const long double mag = std::exp(ln_c + std::log(std::abs(lnlnln)));
    out.log_bound = ln_two_pi - (lnlnln >= 0 ? mag : -mag);
  }
  out.bound = k == 3 ? kTwoPi / (static_cast<double>(n) + 1.0) : static_cast<double>(std::exp(out.log_bound));
  out.ok = out.measure <= out.bound + tol.measure_bound_slack;
  return out;
}

}  // namespace pinpat
