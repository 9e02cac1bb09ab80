// Chunked fork-join over an index range.  Chunk boundaries depend only on
// (range, workers), so worker-local results merged in worker order are
// reproducible for any fixed worker count; OR-style merges are reproducible
// for every worker count.

#ifndef RELMON_SRC_PARALLEL_HPP_
#define RELMON_SRC_PARALLEL_HPP_

#include <cstdint>
#include <thread>
#include <vector>

namespace relmon::detail {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// fn(worker, begin, end) over a partition of [begin, end) into at most
// `workers` contiguous chunks.
template <typename F>
void run_chunked(std::uint64_t begin, std::uint64_t end, int workers, F&& fn) {
  const std::uint64_t total = end > begin ? end - begin : 0;
  if (total == 0) return;
  const std::uint64_t w =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_workers(workers)), total);
  if (w <= 1) {
    fn(0, begin, end);
    return;
  }
  const std::uint64_t chunk = (total + w - 1) / w;
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::uint64_t k = 0; k < w; ++k) {
    const std::uint64_t lo = begin + k * chunk;
    const std::uint64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&fn, k, lo, hi] { fn(static_cast<int>(k), lo, hi); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace relmon::detail

#endif  // RELMON_SRC_PARALLEL_HPP_
