#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace vos {

// Worker count for scans: hardware concurrency, capped by VOS_THREADS when set.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VOS_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n;
}

// Splits [0, total) into contiguous chunks, runs `fn(begin, end)` on each and
// returns the chunk results in index order, so callers merge deterministically.
template <typename Result>
std::vector<Result> parallel_chunks(std::uint64_t total,
                                    const std::function<Result(std::uint64_t, std::uint64_t)>& fn,
                                    unsigned workers = worker_count()) {
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total)));
  std::vector<Result> results(workers);
  if (workers == 1) {
    results[0] = fn(0, total);
    return results;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t step = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(total, w * step);
    const std::uint64_t end = std::min(total, begin + step);
    threads.emplace_back([&, w, begin, end] {
      try {
        results[w] = fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace vos
