#pragma once

// Deterministic fan-out helpers. Workers race over an index space but results
// are merged canonically (minimum failing index wins), so output never
// depends on the worker count.

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace qmv {

// Runs fn(i) for i in [0,count); fn returns true on "failure found".
// Returns the smallest failing index, or count when none fails.
// Indices above an already-found failure may be skipped.
inline std::uint64_t first_failure(std::uint64_t count, unsigned jobs,
                                   const std::function<bool(std::uint64_t)>& fn) {
  if (jobs <= 1 || count < 256) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (fn(i)) return i;
    return count;
  }
  std::atomic<std::uint64_t> best{count};
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 64;
  auto worker = [&] {
    for (;;) {
      std::uint64_t s = next.fetch_add(kChunk);
      if (s >= count || s >= best.load(std::memory_order_relaxed)) return;
      std::uint64_t e = std::min(s + kChunk, count);
      for (std::uint64_t i = s; i < e; ++i) {
        if (i >= best.load(std::memory_order_relaxed)) break;
        if (fn(i)) {
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return best.load();
}

// Runs fn(i) for every i in [0,count), no early exit. Each index is handled
// exactly once; fn writes to its own slot.
inline void parallel_for(std::uint64_t count, unsigned jobs,
                         const std::function<void(std::uint64_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned t = std::min<std::uint64_t>(jobs, count);
  for (unsigned j = 0; j < t; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace qmv
