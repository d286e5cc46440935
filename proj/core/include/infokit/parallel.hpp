#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace infokit {

// Deterministic trial runner: trials are partitioned into fixed-size blocks
// whose boundaries do not depend on the worker count.  Workers claim blocks
// through an atomic counter and fill a presized result slot, so the caller can
// fold the blocks sequentially in block order and obtain bit-identical totals
// for 1 or N threads.
template <typename Block, typename BlockFn>
std::vector<Block> run_trial_blocks(std::uint64_t trials, unsigned threads,
                                    BlockFn&& fn,
                                    std::uint64_t block_size = 4096) {
  const std::uint64_t n_blocks = (trials + block_size - 1) / block_size;
  std::vector<Block> blocks(static_cast<std::size_t>(n_blocks));
  if (n_blocks == 0) return blocks;
  if (threads == 0) threads = 1;
  if (threads > n_blocks) threads = static_cast<unsigned>(n_blocks);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= n_blocks) return;
      const std::uint64_t begin = b * block_size;
      const std::uint64_t end = std::min(trials, begin + block_size);
      blocks[static_cast<std::size_t>(b)] = fn(begin, end);
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return blocks;
}

}  // namespace infokit
