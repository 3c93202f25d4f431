#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace minktens {

inline int& globalThreadCountRef() {
  static int count = 0;  // 0 = not yet resolved
  return count;
}

inline int defaultThreads() {
  int& g = globalThreadCountRef();
  if (g > 0) return g;
  if (const char* env = std::getenv("MINKTENS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline void setGlobalThreads(int n) { globalThreadCountRef() = n > 0 ? n : 0; }

// Runs perChunk(chunkIndex, begin, end) over [0, total) split into fixed-size
// chunks. The chunk layout depends only on (total, chunkSize), never on the
// worker count, so callers that reduce per-chunk results in chunk order get
// identical output for any number of threads.
template <class Fn>
void parallelChunks(std::size_t total, std::size_t chunkSize, int threads, Fn&& perChunk) {
  if (total == 0) return;
  if (chunkSize == 0) chunkSize = 1;
  const std::size_t nChunks = (total + chunkSize - 1) / chunkSize;
  if (threads <= 0) threads = defaultThreads();
  const int nWorkers =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), nChunks));
  if (nWorkers <= 1) {
    for (std::size_t c = 0; c < nChunks; ++c)
      perChunk(c, c * chunkSize, std::min(total, (c + 1) * chunkSize));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nChunks) return;
      perChunk(c, c * chunkSize, std::min(total, (c + 1) * chunkSize));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nWorkers));
  for (int i = 0; i < nWorkers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

inline std::size_t chunkCount(std::size_t total, std::size_t chunkSize) {
  return chunkSize == 0 ? total : (total + chunkSize - 1) / chunkSize;
}

}  // namespace minktens
