#pragma once

// Deterministic data-parallel helpers. Work is cut into a chunk count that
// depends only on the problem size, never on the thread count, and chunk
// results are combined by a fixed-order pairwise tree; scalars come out
// bit-identical for any number of workers.

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace corrlab {

inline unsigned& worker_count() {
  static unsigned n = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

inline void set_worker_count(unsigned n) { worker_count() = std::max(1u, n); }

// Runs fn(i) for i in [0,n). Chunking is size-derived only.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  unsigned workers = worker_count();
  if (workers <= 1 || n < 2048) {
    body(0, n);
    return;
  }
  std::size_t chunks = std::min<std::size_t>(256, (n + 2047) / 2048);
  std::size_t chunk_size = (n + chunks - 1) / chunks;
  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      std::size_t lo = c * chunk_size;
      std::size_t hi = std::min(n, lo + chunk_size);
      if (lo < hi) body(lo, hi);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

// Fixed-order pairwise summation.
template <typename T>
T pairwise_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() <= 8) {
    T s = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) s += v[i];
    return s;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v));
}

// Evaluate term(i) for i in [0,n) in parallel and reduce pairwise.
template <typename T>
T parallel_sum(std::size_t n, const std::function<T(std::size_t)>& term) {
  std::vector<T> vals(n);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) vals[i] = term(i);
  });
  return pairwise_sum(vals);
}

} // namespace corrlab
