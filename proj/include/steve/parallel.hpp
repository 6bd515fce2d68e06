#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "steve/error.hpp"

namespace steve {

/// Number of worker threads: explicit request, else STEVE_WORKERS, else the
/// hardware concurrency.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STEVE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) {
      fail(ErrorKind::Usage, std::string("STEVE_WORKERS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs `fn(chunk)` for chunk = 0..n-1 on up to `workers` threads and returns
/// the results indexed by chunk. Chunks are handed out through an atomic
/// counter; callers merge in chunk order, so output never depends on the
/// worker count. The exception of the lowest failing chunk is rethrown.
template <class Fn>
auto parallel_chunks(std::size_t n, int workers, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> results(n);
  std::vector<std::exception_ptr> errors(n);
  const int threads = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1))));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < n;) {
      try {
        results[c] = fn(c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace steve
