#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace klh {

// Worker count: KLH_THREADS when set, otherwise the hardware report, never
// less than one.
inline int default_worker_count() {
  if (const char* env = std::getenv("KLH_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Splits [0, n) into at most parts contiguous blocks of near-equal size.
inline std::vector<std::pair<std::size_t, std::size_t>> split_blocks(std::size_t n, int parts) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n == 0) return out;
  std::size_t p = parts < 1 ? 1 : static_cast<std::size_t>(parts);
  if (p > n) p = n;
  std::size_t base = n / p, extra = n % p, begin = 0;
  for (std::size_t b = 0; b < p; ++b) {
    std::size_t len = base + (b < extra ? 1 : 0);
    out.emplace_back(begin, begin + len);
    begin += len;
  }
  return out;
}

// Runs fn(block_index, begin, end) on one thread per block; the results must
// be written into per-block slots so the merge stays deterministic.
template <typename Fn>
void run_blocks(const std::vector<std::pair<std::size_t, std::size_t>>& blocks, Fn&& fn) {
  if (blocks.size() <= 1) {
    if (!blocks.empty()) fn(std::size_t{0}, blocks[0].first, blocks[0].second);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    pool.emplace_back([&, b] { fn(b, blocks[b].first, blocks[b].second); });
  for (std::thread& t : pool) t.join();
}

}  // namespace klh
