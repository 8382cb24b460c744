#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace ecyc::par {

inline unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Apply fn to [begin, end) split into fixed chunks pulled by a worker pool.
// Results are stored per chunk and returned in chunk order, so the merged
// output is byte-identical regardless of the worker count.
template <class R, class Fn>
std::vector<R> map_chunks(std::size_t begin, std::size_t end, std::size_t chunk,
                          unsigned workers, Fn fn) {
  if (chunk == 0) chunk = 1;
  std::size_t n = end > begin ? end - begin : 0;
  std::size_t n_chunks = (n + chunk - 1) / chunk;
  std::vector<R> results(n_chunks);
  if (n_chunks == 0) return results;
  if (workers == 0) workers = 1;

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n_chunks) break;
      std::size_t lo = begin + i * chunk;
      std::size_t hi = lo + chunk < end ? lo + chunk : end;
      results[i] = fn(lo, hi);
    }
  };

  if (workers == 1 || n_chunks == 1) {
    work();
    return results;
  }
  std::vector<std::thread> pool;
  unsigned spawn = workers < n_chunks ? workers : static_cast<unsigned>(n_chunks);
  pool.reserve(spawn);
  for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace ecyc::par
