#pragma once

// Seeded detector suites shared by the unit tests and the acceptance run.
// Each suite builds its own random instances and judges the detector with
// checks that do not call back into it: residuals are recomputed by brute
// force over all set points, and the k = 3 planar oracle solves the
// two-point alignment in closed form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pinpat/catalog.hpp"
#include "pinpat/detector.hpp"
#include "pinpat/geometry.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat::testing {

struct SuiteResult {
  int cases = 0;
  int failures = 0;
  int skipped = 0;  // instances inside the oracle's ambiguity band
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline Point random_point(std::mt19937_64& rng, int d, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<double> c(static_cast<std::size_t>(d));
  for (auto& v : c) v = u(rng);
  return Point(std::move(c));
}

// Haar-ish orthogonal matrix: Gram-Schmidt on Gaussian columns, random reflection.
inline Isometry random_isometry(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Point> cols;
  for (int c = 0; c < d; ++c) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (auto& x : v) x = g(rng);
    cols.emplace_back(std::move(v));
  }
  std::vector<double> basis = complete_basis(d, cols);
  if (std::bernoulli_distribution(0.5)(rng))
    for (int r = 0; r < d; ++r) basis[static_cast<std::size_t>(r)] = -basis[static_cast<std::size_t>(r)];
  std::vector<double> rows(basis.size());
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      rows[static_cast<std::size_t>(r * d + c)] = basis[static_cast<std::size_t>(c * d + r)];
  return Isometry(d, std::move(rows));
}

// max_j min_e |x + r O p_j - e| over every stored point, no index.
inline double brute_residual(const DiscretizedSet& e, const Point& x, const Pattern& v, double r, const Isometry& o) {
  double worst = 0.0;
  for (const Point& p : v.points()) {
    const Point img = x + o.apply(p) * r;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < e.size(); ++i) best = std::min(best, distance(e.point(i), img.coords()));
    worst = std::max(worst, best);
  }
  return worst;
}

struct Instance {
  DiscretizedSet e;
  Point x;
  Pattern v;
  double r = 1.0;
  double tol = 0.05;
  bool planted = false;
};

// Pattern for case i: circle patterns from the catalog (k = 3 or 4) on even
// cases, generic normalized triangles / quadrilaterals on odd ones.
inline Pattern suite_pattern(std::mt19937_64& rng, int d, int i) {
  static const std::uint32_t primes[] = {5, 7, 11, 13};
  if (i % 2 == 0) {
    const std::uint32_t np1 = primes[static_cast<std::size_t>(i / 2) % 4];
    const int k = (i / 2) % 3 == 0 ? 4 : 3;
    const auto idx = 1 + static_cast<std::uint32_t>(rng() % (np1 - 1));
    return catalog_pattern(idx, k, np1 - 1, d);
  }
  const int k = 3 + static_cast<int>(rng() % 2);
  while (true) {
    std::vector<Point> pts{Point::zero(d)};
    for (int j = 1; j < k; ++j) pts.push_back(random_point(rng, d, 1.0));
    const Pattern raw(pts);
    if (raw.min_pairwise_distance() < 0.3) continue;
    const Pattern v = normalize_pattern(raw);
    bool spread = true;  // keep the pattern away from degenerate shapes
    for (int j = 1; j < k; ++j) spread = spread && v[j].norm() < 4.0;
    if (spread) return v;
  }
}

// Pin, optional planted copy with noise <= tol / 8, and sparse clutter.
inline Instance make_instance(std::mt19937_64& rng, int d, int i, bool plant, int clutter) {
  Instance in;
  in.v = suite_pattern(rng, d, i);
  in.x = random_point(rng, d, 2.0);
  std::uniform_real_distribution<double> ur(1.0, 3.0);
  in.r = ur(rng);
  in.planted = plant;
  std::vector<Point> pts{in.x};
  if (plant) {
    const Isometry o = random_isometry(rng, d);
    for (int j = 1; j < in.v.size(); ++j) {
      Point noise = random_point(rng, d, 1.0);
      const double n = noise.norm();
      const double len = std::uniform_real_distribution<double>(0.0, in.tol / 8.0)(rng);
      noise = n > 0.0 ? noise * (len / n) : Point::zero(d);
      pts.push_back(in.x + o.apply(in.v[j]) * in.r + noise);
    }
  }
  for (int c = 0; c < clutter; ++c) pts.push_back(in.x + random_point(rng, d, 4.0 * in.r));
  in.e = DiscretizedSet::from_points(pts, in.tol);
  return in;
}

inline bool sound(const Instance& in, const std::optional<Isometry>& w, double r, const DiscretizedSet& e,
                  const Point& x, double tol) {
  if (!w) return true;
  return w->orthogonality_error() <= kTolerances.orthogonality && brute_residual(e, x, in.v, r, *w) <= tol * (1.0 + 1e-12);
}

// occurs_at(QE, Qx) agrees with occurs_at(E, x); both witnesses pass the brute residual.
inline SuiteResult isometry_equivariance_suite(int cases, std::uint64_t seed) {
  SuiteResult out;
  auto rng = make_rng(seed, 0x150);
  for (int i = 0; i < cases; ++i) {
    const int d = i % 3 == 2 ? 3 : 2;
    const Instance in = make_instance(rng, d, i, i % 4 != 3, 6);
    const Isometry q = random_isometry(rng, d);
    const DiscretizedSet qe = in.e.mapped(q, Point::zero(d));
    const Point qx = q.apply(in.x);
    const auto a = occurs_at(in.e, in.x, in.v, in.r, in.tol);
    const auto b = occurs_at(qe, qx, in.v, in.r, in.tol);
    ++out.cases;
    if (a.has_value() != b.has_value())
      out.fail("case " + std::to_string(i) + ": accept differs under an isometry");
    else if (!sound(in, a, in.r, in.e, in.x, in.tol) || !sound(in, b, in.r, qe, qx, in.tol))
      out.fail("case " + std::to_string(i) + ": witness residual exceeds tol");
    else if (in.planted && !a)
      out.fail("case " + std::to_string(i) + ": planted copy missed");
  }
  return out;
}

// r in D_x(E) iff 2r in D_{2x}(2E) with tol doubled; scaling sets match witness for witness.
inline SuiteResult scale_equivariance_suite(int cases, std::uint64_t seed) {
  SuiteResult out;
  auto rng = make_rng(seed, 0x5ca1e);
  constexpr double lambda = 2.0;
  for (int i = 0; i < cases; ++i) {
    const int d = i % 3 == 2 ? 3 : 2;
    const Instance in = make_instance(rng, d, i, i % 4 != 3, 6);
    const DiscretizedSet le = in.e.mapped(Isometry::identity(d), Point::zero(d), lambda);
    const Point lx = in.x * lambda;
    std::vector<double> grid, lgrid;
    for (int g = -2; g <= 2; ++g) {
      grid.push_back(in.r * (1.0 + 0.01 * g));
      lgrid.push_back(lambda * grid.back());
    }
    const auto s = pinned_scaling_set(in.e, in.x, in.v, grid, in.tol, {}, Exec::serial);
    const auto ls = pinned_scaling_set(le, lx, in.v, lgrid, lambda * in.tol, {}, Exec::serial);
    ++out.cases;
    bool same = s.scales.size() == ls.scales.size();
    for (std::size_t j = 0; same && j < s.scales.size(); ++j)
      same = std::abs(lambda * s.scales[j].r - ls.scales[j].r) <= 1e-12 * ls.scales[j].r;
    if (!same) {
      out.fail("case " + std::to_string(i) + ": scaled scan accepts a different set of scales");
      continue;
    }
    for (std::size_t j = 0; j < s.scales.size(); ++j) {
      if (!sound(in, s.scales[j].o, s.scales[j].r, in.e, in.x, in.tol) ||
          !sound(in, ls.scales[j].o, ls.scales[j].r, le, lx, lambda * in.tol)) {
        out.fail("case " + std::to_string(i) + ": scaled witness residual exceeds tol");
        break;
      }
    }
  }
  return out;
}

// Every witness from every path passes the brute residual; scans over r grids included.
inline SuiteResult soundness_suite(int cases, std::uint64_t seed) {
  SuiteResult out;
  auto rng = make_rng(seed, 0x50d);
  for (int i = 0; i < cases; ++i) {
    const int d = i % 3 == 2 ? 3 : 2;
    const Instance in = make_instance(rng, d, i, i % 2 == 0, 12);
    std::vector<double> grid;
    for (int g = 0; g < 9; ++g) grid.push_back(in.r * (0.9 + 0.025 * g));
    DetectorOptions gen;
    gen.path = DetectorOptions::Path::generic_only;
    const auto a = pinned_scaling_set(in.e, in.x, in.v, grid, in.tol, {}, Exec::serial);
    const auto b = pinned_scaling_set(in.e, in.x, in.v, grid, in.tol, gen, Exec::serial);
    ++out.cases;
    bool ok = true;
    for (const auto* s : {&a, &b})
      for (const auto& w : s->scales) ok = ok && sound(in, w.o, w.r, in.e, in.x, in.tol);
    if (!ok) out.fail("case " + std::to_string(i) + ": a stored witness exceeds tol");
  }
  return out;
}

// Planar circle patterns: fast_only and generic_only agree on accept / reject.
inline SuiteResult fast_generic_agreement_suite(int cases, std::uint64_t seed) {
  SuiteResult out;
  auto rng = make_rng(seed, 0xfa57);
  DetectorOptions fast, gen;
  fast.path = DetectorOptions::Path::fast_only;
  gen.path = DetectorOptions::Path::generic_only;
  for (int i = 0; i < cases; ++i) {
    const Instance in = make_instance(rng, 2, 2 * i, i % 3 != 2, 10);  // even index: catalog pattern
    const auto a = occurs_at(in.e, in.x, in.v, in.r, in.tol, fast);
    const auto b = occurs_at(in.e, in.x, in.v, in.r, in.tol, gen);
    ++out.cases;
    if (a.has_value() != b.has_value())
      out.fail("case " + std::to_string(i) + ": fast path " + (a ? "accepts" : "rejects") + ", generic path " +
               (b ? "accepts" : "rejects"));
    else if (!sound(in, a, in.r, in.e, in.x, in.tol) || !sound(in, b, in.r, in.e, in.x, in.tol))
      out.fail("case " + std::to_string(i) + ": witness residual exceeds tol");
  }
  return out;
}

// Closed-form planar oracle for k = 3. For one ordered pair (y1, y2) it brackets
// the best achievable max error over O(2): the least-squares rotation gives an
// upper bound, sqrt(min sum of squares / 2) a lower bound.
struct PairBracket {
  double lower = 0.0;
  double upper = 0.0;
};

inline PairBracket planar_pair_bracket(const Point& x, const Pattern& v, double r, const Point& y1, const Point& y2) {
  PairBracket best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const Point a1 = v[1] * r, a2 = v[2] * r;
  const Point b1 = y1 - x, b2 = y2 - x;
  for (double s : {1.0, -1.0}) {
    // reflect the pattern across the first axis for s = -1
    const double ax1 = a1[0], ay1 = s * a1[1], ax2 = a2[0], ay2 = s * a2[1];
    const double c = ax1 * b1[0] + ay1 * b1[1] + ax2 * b2[0] + ay2 * b2[1];
    const double sn = ax1 * b1[1] - ay1 * b1[0] + ax2 * b2[1] - ay2 * b2[0];
    const double t = std::atan2(sn, c);
    const double ct = std::cos(t), st = std::sin(t);
    const double e1 = std::hypot(ct * ax1 - st * ay1 - b1[0], st * ax1 + ct * ay1 - b1[1]);
    const double e2 = std::hypot(ct * ax2 - st * ay2 - b2[0], st * ax2 + ct * ay2 - b2[1]);
    best.upper = std::min(best.upper, std::max(e1, e2));
    best.lower = std::min(best.lower, std::sqrt((e1 * e1 + e2 * e2) / 2.0));
  }
  return best;
}

// Exhaustive k = 3 check on sets of at most 30 points: a pair within tol / 4
// forces acceptance, and with no pair able to reach tol the detector must reject.
// Instances whose best pair falls between the two are counted as skipped.
inline SuiteResult brute_force_oracle_suite(int cases, std::uint64_t seed) {
  SuiteResult out;
  auto rng = make_rng(seed, 0xb007e);
  for (int i = 0; i < cases; ++i) {
    // even pattern indices with (index / 2) % 3 == 1 are 3-point catalog patterns;
    // odd ones are random and redrawn until they have three points
    const int idx = i % 2 == 0 ? 2 * (3 * (i / 2) + 1) : 2 * i + 1;
    Instance in = make_instance(rng, 2, idx, i % 4 < 2, 6 + i % 22);
    for (int attempt = 0; in.v.size() != 3 && attempt < 64; ++attempt)
      in = make_instance(rng, 2, idx, i % 4 < 2, 6 + i % 22);
    if (in.v.size() != 3) {
      out.fail("case " + std::to_string(i) + ": no 3-point pattern drawn");
      continue;
    }
    double up = std::numeric_limits<double>::infinity(), lo = up;
    for (std::size_t a = 0; a < in.e.size(); ++a)
      for (std::size_t b = 0; b < in.e.size(); ++b) {
        if (a == b) continue;
        const auto br = planar_pair_bracket(in.x, in.v, in.r, in.e.point_at(a), in.e.point_at(b));
        up = std::min(up, br.upper);
        lo = std::min(lo, br.lower);
      }
    const bool must_accept = up <= in.tol / 4.0;
    const bool must_reject = lo > in.tol;
    if (!must_accept && !must_reject) {
      ++out.skipped;
      continue;
    }
    const auto w = occurs_at(in.e, in.x, in.v, in.r, in.tol);
    ++out.cases;
    if (w.has_value() != must_accept)
      out.fail("case " + std::to_string(i) + ": oracle says " + (must_accept ? "accept" : "reject"));
  }
  return out;
}

}  // namespace pinpat::testing
