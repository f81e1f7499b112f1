#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace logvlasov {

// Deterministic parallel map over [0, n): the work is cut into fixed chunks
// whose boundaries do not depend on the thread count, so any per-chunk
// results can be merged in chunk order and reductions stay bitwise stable.
inline std::int64_t chunk_count(std::int64_t n, std::int64_t chunk_size = 1 << 14) {
  return (n + chunk_size - 1) / chunk_size;
}

template <typename Body>
void parallel_chunks(std::int64_t n, int n_threads, Body&& body,
                     std::int64_t chunk_size = 1 << 14) {
  if (n <= 0) return;
  const std::int64_t n_chunks = chunk_count(n, chunk_size);
  if (n_threads <= 1 || n_chunks == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) {
      const std::int64_t lo = c * chunk_size;
      const std::int64_t hi = std::min(n, lo + chunk_size);
      body(c, lo, hi);
    }
    return;
  }

  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::int64_t lo = c * chunk_size;
      const std::int64_t hi = std::min(n, lo + chunk_size);
      body(c, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  const int workers = int(std::min<std::int64_t>(n_threads, n_chunks));
  pool.reserve(workers);
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace logvlasov
