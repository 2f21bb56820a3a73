#pragma once

#include <cstdint>
#include <random>

namespace pinpat {

enum class Exec { serial, parallel };

// Worker count for OpenMP regions. 0 means "resolve from PINPAT_THREADS,
// then the OpenMP default".
void set_thread_count(int n);
int thread_count();
int resolve_thread_count(int requested);

// Independent, reproducible stream: seed and stream id are mixed with
// splitmix64 so chunked parallel loops draw the same numbers as serial ones.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace pinpat
