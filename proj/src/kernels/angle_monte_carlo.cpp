#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pinpat/geometry.hpp"
#include "pinpat/kernels.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat::kernels {

namespace {

constexpr std::uint64_t kChunk = 4096;

struct Sampler {
  int dim;
  double half;
  std::span<const double> x;
  double threshold;
  double xnorm;

  // Direction within the cone; half the draws sit on the boundary, where the lemma is tightest.
  void direction(std::mt19937_64& rng, double* w, const double* flip) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double phi = u(rng) < 0.5 ? half : half * u(rng);
    double perp[kMaxDim];
    double fn2 = 0.0;
    if (flip)
      for (int k = 1; k < dim; ++k) fn2 += flip[k] * flip[k];
    if (flip && fn2 > 0.0) {
      const double fn = std::sqrt(fn2);
      for (int k = 1; k < dim; ++k) perp[k] = -flip[k] / fn;
    } else if (dim == 2) {
      perp[1] = u(rng) < 0.5 ? 1.0 : -1.0;
    } else {
      std::normal_distribution<double> g(0.0, 1.0);
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (int k = 1; k < dim; ++k) {
          perp[k] = g(rng);
          n2 += perp[k] * perp[k];
        }
      } while (n2 == 0.0);
      const double n = std::sqrt(n2);
      for (int k = 1; k < dim; ++k) perp[k] /= n;
    }
    w[0] = std::cos(phi);
    const double s = std::sin(phi);
    for (int k = 1; k < dim; ++k) w[k] = s * perp[k];
  }

  // y = rho * w with |y - x| >= threshold; rho log-uniform, biased to the threshold.
  void draw(std::mt19937_64& rng, double* y, double* w, const double* flip) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    direction(rng, w, flip);
    const double lo = std::max(threshold - xnorm, 1e-6 * std::max(threshold, xnorm));
    const double hi = 100.0 * (threshold + xnorm) + lo;
    for (int attempt = 0; attempt < 64; ++attempt) {
      const double rho = lo * std::exp(u(rng) * std::log(hi / lo));
      double d2 = 0.0;
      for (int k = 0; k < dim; ++k) {
        y[k] = rho * w[k];
        d2 += (y[k] - x[static_cast<std::size_t>(k)]) * (y[k] - x[static_cast<std::size_t>(k)]);
      }
      if (std::sqrt(d2) >= threshold) return;
    }
    // triangle inequality guarantees the distance
    const double rho = threshold + xnorm;
    for (int k = 0; k < dim; ++k) y[k] = rho * w[k];
  }
};

struct ChunkResult {
  std::uint64_t violations = 0;
  double max_angle = -1.0;
  std::uint64_t worst = 0;
  std::vector<double> y, y2;
};

constexpr double kAngleRoundoff = 1e-12;

ChunkResult run_chunk(const Sampler& s, double bound, std::uint64_t chunk, std::uint64_t begin, std::uint64_t end,
                      std::uint64_t seed) {
  auto rng = make_rng(seed, chunk);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ChunkResult r;
  const int d = s.dim;
  double y[kMaxDim], y2[kMaxDim], w[kMaxDim], w2[kMaxDim], a[kMaxDim], b[kMaxDim];
  for (std::uint64_t i = begin; i < end; ++i) {
    s.draw(rng, y, w, nullptr);
    const bool opposite = u(rng) < 0.5;
    s.draw(rng, y2, w2, opposite ? w : nullptr);
    for (int k = 0; k < d; ++k) {
      a[k] = y[k] - s.x[static_cast<std::size_t>(k)];
      b[k] = y2[k] - s.x[static_cast<std::size_t>(k)];
    }
    const double ang = angle_between(std::span<const double>(a, static_cast<std::size_t>(d)),
                                     std::span<const double>(b, static_cast<std::size_t>(d)));
    if (ang > bound * (1.0 + kAngleRoundoff)) ++r.violations;  // boundary pairs land on the bound itself
    if (ang > r.max_angle) {
      r.max_angle = ang;
      r.worst = i;
      r.y.assign(y, y + d);
      r.y2.assign(y2, y2 + d);
    }
  }
  return r;
}

AngleSample combine(const std::vector<ChunkResult>& parts, std::uint64_t samples) {
  AngleSample out;
  out.samples = samples;
  for (const auto& p : parts) {
    out.violations += p.violations;
    if (p.max_angle > out.max_angle || out.worst_y.empty()) {
      if (p.max_angle < 0) continue;
      out.max_angle = p.max_angle;
      out.worst_index = p.worst;
      out.worst_y = p.y;
      out.worst_y2 = p.y2;
    }
  }
  return out;
}

Sampler make_sampler(int dim, double half_angle, std::span<const double> x, double threshold) {
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  return Sampler{dim, half_angle, x, threshold, std::sqrt(n2)};
}

}  // namespace

AngleSample angle_pairs_serial(int dim, double half_angle, std::span<const double> x, double threshold, double bound,
                               std::uint64_t samples, std::uint64_t seed) {
  const Sampler s = make_sampler(dim, half_angle, x, threshold);
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<ChunkResult> parts(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c)
    parts[c] = run_chunk(s, bound, c, c * kChunk, std::min(samples, (c + 1) * kChunk), seed);
  return combine(parts, samples);
}

AngleSample angle_pairs_omp(int dim, double half_angle, std::span<const double> x, double threshold, double bound,
                            std::uint64_t samples, std::uint64_t seed) {
  const Sampler s = make_sampler(dim, half_angle, x, threshold);
  const auto chunks = static_cast<std::int64_t>((samples + kChunk - 1) / kChunk);
  std::vector<ChunkResult> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto cu = static_cast<std::uint64_t>(c);
    parts[static_cast<std::size_t>(c)] = run_chunk(s, bound, cu, cu * kChunk, std::min(samples, (cu + 1) * kChunk), seed);
  }
  return combine(parts, samples);
}

}  // namespace pinpat::kernels
