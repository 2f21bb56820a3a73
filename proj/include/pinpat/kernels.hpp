#pragma once

// Data-parallel kernels. Every kernel has a plain serial reference and an
// OpenMP variant; both return bit-identical results (integer reductions, or
// fixed-chunk floating sums combined in chunk order).

#include <cstdint>
#include <span>
#include <vector>

namespace pinpat::kernels {

// counts[i] = #{p : |p|^2 <= radii[i]^2}; radii increasing.
std::vector<std::uint64_t> radial_count_serial(std::span<const double> flat, int dim, std::span<const double> radii);
std::vector<std::uint64_t> radial_count_omp(std::span<const double> flat, int dim, std::span<const double> radii);

// Lattice points z in h*Z^d with |z| <= radius and angle(z, e1) <= half_angle.
std::uint64_t cone_lattice_count_serial(int dim, double half_angle, double radius, double pitch);
std::uint64_t cone_lattice_count_omp(int dim, double half_angle, double radius, double pitch);
// Same lattice points, emitted as flat coordinates in column order.
std::vector<double> cone_lattice_points_serial(int dim, double half_angle, double radius, double pitch);
std::vector<double> cone_lattice_points_omp(int dim, double half_angle, double radius, double pitch);

struct AngleSample {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double max_angle = 0.0;
  std::uint64_t worst_index = 0;  // sample index attaining max_angle
  std::vector<double> worst_y, worst_y2;
};

// Draws pairs y, y' in the cone (axis e1, half-angle h) with |y - x|, |y' - x| >= threshold
// and records angle(y - x, y' - x) against bound. Sample i uses stream i / chunk.
AngleSample angle_pairs_serial(int dim, double half_angle, std::span<const double> x, double threshold,
                               double bound, std::uint64_t samples, std::uint64_t seed);
AngleSample angle_pairs_omp(int dim, double half_angle, std::span<const double> x, double threshold,
                            double bound, std::uint64_t samples, std::uint64_t seed);

// Tensor Gauss-Legendre integral of the repeated-polar Jacobian over the
// full angle box, n nodes per sub-interval.
double polar_jacobian_integral_serial(int dim, int nodes);
double polar_jacobian_integral_omp(int dim, int nodes);

// Coarea form of the ball volume: int_0^R r^{d-1} int_S chi(|r w| <= R) dw dr,
// Gauss-Legendre in r and the same angular tensor rule.
double coarea_ball_volume_serial(int dim, int nodes, double radius);
double coarea_ball_volume_omp(int dim, int nodes, double radius);

}  // namespace pinpat::kernels
