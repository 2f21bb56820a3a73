// Serial reference vs OpenMP variant for each kernel. Thread count follows
// PINPAT_THREADS, then the OpenMP default.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "pinpat/catalog.hpp"
#include "pinpat/cyclic.hpp"
#include "pinpat/detector.hpp"
#include "pinpat/geometry.hpp"
#include "pinpat/kernels.hpp"
#include "pinpat/lab/generators.hpp"

namespace {

using namespace pinpat;

std::vector<double> disk_points() {
  const auto set = lab::grid_ball(3, 8.0, 0.1);
  std::vector<double> flat;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (double c : set.point_at(i).coords()) flat.push_back(c);
  return flat;
}

std::vector<double> radii() {
  std::vector<double> r;
  for (int i = 1; i <= 256; ++i) r.push_back(8.0 * i / 256.0);
  return r;
}

void BM_RadialCount(benchmark::State& st) {
  static const auto flat = disk_points();
  static const auto rs = radii();
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? kernels::radial_count_omp(flat, 3, rs) : kernels::radial_count_serial(flat, 3, rs));
}

void BM_ConeLattice(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? kernels::cone_lattice_count_omp(3, 0.2, 40.0, 0.1)
                                         : kernels::cone_lattice_count_serial(3, 0.2, 40.0, 0.1));
}

void BM_AnglePairs(benchmark::State& st) {
  const std::vector<double> x{1.0, 0.0};
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? kernels::angle_pairs_omp(2, 0.01, x, 5.0, 0.04, 200000, 1)
                                         : kernels::angle_pairs_serial(2, 0.01, x, 5.0, 0.04, 200000, 1));
}

void BM_SphereQuadrature(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? kernels::coarea_ball_volume_omp(4, 16, 1.0)
                                         : kernels::coarea_ball_volume_serial(4, 16, 1.0));
}

void BM_ApFreeSearch(benchmark::State& st) {
  const Exec ex = st.range(0) ? Exec::parallel : Exec::serial;
  for (auto _ : st) benchmark::DoNotOptimize(r_m_exact(30, 3, kDefaultExactLimit, ex));
}

void BM_ScaleScan(benchmark::State& st) {
  static const auto set = lab::grid_ball(2, 6.0, 0.05);
  static const Pattern v = catalog_pattern(3, 3, 10, 2);
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) grid.push_back(0.5 + 0.02 * i);
  const Exec ex = st.range(0) ? Exec::parallel : Exec::serial;
  for (auto _ : st) benchmark::DoNotOptimize(pinned_scaling_set(set, Point{0, 0}, v, grid, 0.05, {}, ex));
}

}  // namespace

// Arg 0: serial reference, Arg 1: OpenMP
BENCHMARK(BM_RadialCount)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConeLattice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnglePairs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SphereQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApFreeSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScaleScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
