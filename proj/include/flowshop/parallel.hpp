#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace flowshop::detail {

inline int resolve_threads(int requested) {
  if (requested < 0) throw std::invalid_argument("thread count must be >= 0");
  if (requested == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return requested;
}

// Runs fn(chunk_index, begin, end) over contiguous chunks of [0, total).
// Chunk boundaries depend only on (total, threads), so callers that merge
// per-chunk results by index (or with a commutative reduction) get values
// that do not depend on scheduling.
template <class Fn>
inline void parallel_chunks(std::size_t total, int threads, Fn&& fn) {
  const int t = resolve_threads(threads);
  if (total == 0) return;
  const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(t), total);
  if (chunks <= 1) {
    fn(std::size_t{0}, std::size_t{0}, total);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  const std::size_t base = total / chunks;
  const std::size_t rem = total % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t len = base + (c < rem ? 1 : 0);
    const std::size_t end = begin + len;
    workers.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
    begin = end;
  }
  for (auto& w : workers) w.join();
}

// SplitMix64 finalizer; used to derive independent substream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace flowshop::detail
