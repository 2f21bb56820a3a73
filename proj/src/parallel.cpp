#include "pinpat/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace pinpat {

namespace {
int g_threads = 0;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PINPAT_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return omp_get_max_threads();
}

void set_thread_count(int n) { g_threads = resolve_thread_count(n); }

int thread_count() {
  if (g_threads <= 0) g_threads = resolve_thread_count(0);
  return g_threads;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix_seed(seed, stream));
}

}  // namespace pinpat
