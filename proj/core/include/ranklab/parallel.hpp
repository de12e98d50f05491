#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ranklab {

// Limits shared by every exhaustive scan.
struct ScanOptions {
  std::uint64_t budget = std::uint64_t(1) << 24;     // codewords / vectors
  std::uint64_t subspaceBudget = std::uint64_t(1) << 20;
  unsigned threads = 0;                               // 0 = hardware parallelism
};

unsigned resolve_threads(unsigned requested);

// Splits [0, total) into contiguous chunks and runs fn(begin, end) on up to
// `threads` workers. fn returns false to cancel the remaining chunks. The
// first exception thrown by a worker is rethrown on the caller.
template <class Fn>
void parallel_chunks(std::uint64_t total, unsigned threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (total == 0) return;
  const std::uint64_t minChunk = 256;
  if (threads <= 1 || total < 2 * minChunk) {
    fn(std::uint64_t(0), total);
    return;
  }
  const std::uint64_t chunks = std::min<std::uint64_t>(total / minChunk, std::uint64_t(threads) * 8);
  const std::uint64_t step = (total + chunks - 1) / chunks;
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> cancelled{false};
  std::exception_ptr error;
  std::mutex errorMutex;
  auto worker = [&] {
    while (!cancelled.load(std::memory_order_relaxed)) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) break;
      const std::uint64_t begin = c * step;
      const std::uint64_t end = std::min(total, begin + step);
      if (begin >= end) break;
      try {
        if (!fn(begin, end)) cancelled = true;
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!error) error = std::current_exception();
        cancelled = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ranklab
