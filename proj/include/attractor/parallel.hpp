#pragma once
// Range-splitting helpers. The contract throughout the library is that worker
// count never changes results: chunks are computed independently and any
// reduction happens in fixed chunk order afterwards.

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace attractor {

// ATTRACTOR_WORKERS overrides; otherwise whatever the hardware offers.
inline unsigned worker_count() {
  if (const char* env = std::getenv("ATTRACTOR_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default on junk values
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// fn(chunk, begin, end) once per contiguous chunk; chunk ordinals follow
// range order, so per-chunk output stitched by ordinal lands in index order.
// Chunk boundaries depend only on n and the worker count, and work inside a
// chunk runs in index order.
template <class Fn>
void parallel_chunks_counted(std::size_t n, Fn&& fn) {
  unsigned workers = worker_count();
  if (n == 0) return;
  if (workers <= 1 || n < 2048) {
    fn(0u, static_cast<std::size_t>(0), n);
    return;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::size_t base = n / workers, extra = n % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::exception_ptr failure = nullptr;
  std::mutex guard;
  std::size_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t len = base + (w < extra ? 1 : 0);
    std::size_t end = begin + len;
    auto task = [&fn, &failure, &guard, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!failure) failure = std::current_exception();
      }
    };
    if (w + 1 == workers) task();
    else pool.emplace_back(task);
    begin = end;
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <class Fn>
void parallel_chunks(std::size_t n, Fn&& fn) {
  parallel_chunks_counted(n, [&fn](unsigned, std::size_t begin, std::size_t end) {
    fn(begin, end);
  });
}

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  parallel_chunks(n, [&fn](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace attractor
