#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>

#include "pinpat/cyclic.hpp"
#include "pinpat/errors.hpp"

namespace pinpat {

namespace {

using Mask = std::uint64_t;

inline Mask bit(std::uint32_t x) { return Mask{1} << x; }

// All m-APs of Z/NZ as bitmasks, grouped by the elements they contain.
struct ApTable {
  std::uint32_t n = 0;
  std::vector<std::vector<Mask>> through;

  ApTable(std::uint32_t n_, int m) : n(n_), through(n_) {
    std::vector<Mask> all;
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t d = 1; d < n; ++d) {
        if (n / gcd_u64(d, n) < static_cast<std::uint64_t>(m)) continue;
        Mask mk = 0;
        for (int j = 0; j < m; ++j) mk |= bit(static_cast<std::uint32_t>((a + static_cast<std::uint64_t>(j) * d) % n));
        all.push_back(mk);
      }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (Mask mk : all) {
      Mask w = mk;
      while (w) {
        through[static_cast<std::size_t>(std::countr_zero(w))].push_back(mk);
        w &= w - 1;
      }
    }
  }

  // Elements that would complete an AP once x joins cur.
  Mask forbidden_after(Mask cur, std::uint32_t x) const {
    Mask f = 0;
    const Mask with = cur | bit(x);
    for (Mask ap : through[x]) {
      const Mask missing = ap & ~with;
      if (missing && !(missing & (missing - 1))) f |= missing;
    }
    return f;
  }
};

struct Search {
  const ApTable& table;
  std::atomic<std::uint32_t>* shared_best = nullptr;  // parallel mode
  std::uint32_t best = 0;
  Mask best_mask = 0;
  std::uint64_t nodes = 0;
  bool stop_at_first = false;
  bool done = false;

  std::uint32_t bound() const {
    return shared_best ? std::max(best, shared_best->load(std::memory_order_relaxed)) : best;
  }

  void record(Mask cur, std::uint32_t size) {
    best = size;
    best_mask = cur;
    if (shared_best) {
      std::uint32_t prev = shared_best->load(std::memory_order_relaxed);
      while (prev < size && !shared_best->compare_exchange_weak(prev, size, std::memory_order_relaxed)) {
      }
    }
    if (stop_at_first) done = true;
  }

  void dfs(Mask cur, std::uint32_t size, Mask cand) {
    ++nodes;
    if (done) return;
    if (size + static_cast<std::uint32_t>(std::popcount(cand)) <= bound()) return;
    if (!cand) {
      record(cur, size);
      return;
    }
    const auto x = static_cast<std::uint32_t>(std::countr_zero(cand));
    const Mask rest = cand & ~bit(x);
    dfs(cur | bit(x), size + 1, rest & ~table.forbidden_after(cur, x));
    dfs(cur, size, rest);
  }
};

CyclicSet to_set(std::uint32_t n, Mask m) {
  CyclicSet s(n);
  while (m) {
    s.insert(static_cast<std::uint32_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return s;
}

}  // namespace

RmResult r_m_exact(std::uint32_t n, int m, int exact_limit, Exec exec) {
  require(m >= 2, ErrorCode::BadLength, "m must be >= 2");
  require(static_cast<std::uint32_t>(m) <= n, ErrorCode::BadLength, "m must not exceed N");
  require(n <= static_cast<std::uint32_t>(exact_limit), ErrorCode::TooLarge, "N exceeds the exact limit");
  require(n <= 64, ErrorCode::TooLarge, "N exceeds the 64-bit search mask");

  const ApTable table(n, m);
  const Mask all = n == 64 ? ~Mask{0} : (bit(n) - 1);
  // translation symmetry: every nonempty AP-free set has a translate containing 0
  const Mask cur0 = bit(0);
  const Mask cand0 = all & ~cur0 & ~table.forbidden_after(0, 0);

  RmResult res;
  std::uint32_t opt = 0;
  if (exec == Exec::serial) {
    Search s{table};
    s.best = 1;
    s.best_mask = cur0;
    s.dfs(cur0, 1, cand0);
    res.nodes = s.nodes;
    opt = s.best;
  } else {
    std::vector<std::uint32_t> seconds;
    for (Mask w = cand0; w; w &= w - 1) seconds.push_back(static_cast<std::uint32_t>(std::countr_zero(w)));
    std::atomic<std::uint32_t> shared{1};
    std::uint64_t nodes = 0;
    const auto count = static_cast<std::int64_t>(seconds.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : nodes) num_threads(thread_count())
    for (std::int64_t i = 0; i < count; ++i) {
      const std::uint32_t y = seconds[static_cast<std::size_t>(i)];
      const Mask above = all & ~((bit(y) << 1) - 1);
      Search s{table, &shared};
      s.dfs(cur0 | bit(y), 2, cand0 & above & ~table.forbidden_after(cur0, y));
      nodes += s.nodes;
    }
    res.nodes = nodes;
    opt = shared.load();
  }

  // deterministic witness: first set of the optimal size in serial DFS order
  Search w{table};
  w.best = opt - 1;
  w.stop_at_first = true;
  w.dfs(cur0, 1, cand0);
  res.size = opt;
  res.witness = to_set(n, w.done ? w.best_mask : cur0);
  return res;
}

}  // namespace pinpat
