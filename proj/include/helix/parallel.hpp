#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "helix/accumulate.hpp"

namespace helix {

// Global worker-count knob used by the indexed reductions (CLI --threads).
int max_threads();
void set_max_threads(int n);

// Sum of f(k) for k in [k0, k1). Work is split into fixed-size chunks;
// each chunk is Kahan-summed by whichever worker picks it up and the chunk
// results are combined in index order, so the value is independent of the
// number of threads. The first exception (lowest chunk) is rethrown.
template <class F>
double parallel_sum_indexed(long k0, long k1, F f, long chunk_size = 4096) {
  if (k1 <= k0) return 0.0;
  long n_chunks = (k1 - k0 + chunk_size - 1) / chunk_size;
  std::vector<double> partial(static_cast<size_t>(n_chunks), 0.0);
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n_chunks));
  int workers = max_threads();
  if (workers > n_chunks) workers = static_cast<int>(n_chunks);
  auto run_chunk = [&](long c) {
    long a = k0 + c * chunk_size;
    long b = a + chunk_size < k1 ? a + chunk_size : k1;
    try {
      KahanSum acc;
      for (long k = a; k < b; ++k) acc.add(f(k));
      partial[static_cast<size_t>(c)] = acc.result();
    } catch (...) {
      errors[static_cast<size_t>(c)] = std::current_exception();
    }
  };
  if (workers <= 1) {
    for (long c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    std::atomic<long> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          long c = next.fetch_add(1);
          if (c >= n_chunks) return;
          run_chunk(c);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  KahanSum total;
  for (double p : partial) total.add(p);
  return total.result();
}

}  // namespace helix
