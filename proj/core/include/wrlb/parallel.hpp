// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wrlb {

/// Worker count from WRLB_THREADS, else hardware concurrency, at least 1.
int default_worker_count();

/// Resolve a requested worker count (<= 0 means default_worker_count()).
inline int resolve_workers(int requested) {
  return requested > 0 ? requested : default_worker_count();
}

/// Fixed-size chunks so that per-chunk accumulation and the final merge
/// order are independent of the number of workers.
inline constexpr std::size_t kChunk = 16;

/// Run body(i) for i in [0, n) on up to `workers` threads. Exceptions are
/// rethrown on the calling thread (the first one wins).
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const int w = static_cast<int>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(chunks, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto run = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next.store(chunks);
      }
    }
  };
  if (w <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w - 1));
    for (int t = 1; t < w; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
}

/// Map-reduce with accumulators of type Acc. Each chunk folds body(i, acc)
/// into a fresh Acc; chunk results are merged left to right, so the result is
/// bit-identical for every worker count.
template <class Acc, class Body, class Merge>
Acc parallel_reduce(std::size_t n, int workers, const Acc& init, Body&& body, Merge&& merge) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Acc> partial(chunks, init);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) body(i, partial[c]);
  });
  Acc out = init;
  for (auto& p : partial) merge(out, p);
  return out;
}

}  // namespace wrlb
