#ifndef MOD1_PARALLEL_HPP
#define MOD1_PARALLEL_HPP

// Deterministic chunked reduction.  The range is cut into fixed-size chunks
// (a function of the problem only, never of the thread count); workers grab
// chunk indices, results land in an index-addressed table, and the final fold
// runs in chunk order.  Output bits are therefore identical for any number of
// threads.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace mod1 {

inline int& thread_budget() {
  static int n = 1;
  return n;
}

template <class T, class PerChunk, class Combine>
T chunked_reduce(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk, T init,
                 PerChunk per_chunk, Combine combine) {
  if (hi <= lo) return init;
  if (chunk == 0) chunk = 1;
  std::uint64_t n_chunks = (hi - lo + chunk - 1) / chunk;
  std::vector<T> slots(n_chunks, init);
  int threads = thread_budget();
  if (threads < 1) threads = 1;
  if (static_cast<std::uint64_t>(threads) > n_chunks) threads = static_cast<int>(n_chunks);

  if (threads == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
      std::uint64_t a = lo + c * chunk;
      std::uint64_t b = a + chunk < hi ? a + chunk : hi;
      slots[c] = per_chunk(a, b);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
      for (;;) {
        std::uint64_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        std::uint64_t a = lo + c * chunk;
        std::uint64_t b = a + chunk < hi ? a + chunk : hi;
        slots[c] = per_chunk(a, b);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  T acc = init;
  for (std::uint64_t c = 0; c < n_chunks; ++c) acc = combine(acc, slots[c]);
  return acc;
}

}  // namespace mod1

#endif
