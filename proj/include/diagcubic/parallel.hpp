#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace diagcubic {

// 0 means "all hardware threads".
unsigned resolve_threads(unsigned requested);

// Splits [0, n) into `chunks` fixed ranges (independent of the thread
// count) and evaluates fn(begin, end) for each on up to `threads` workers.
// Results come back in chunk order, so any reduction over them is
// schedule-independent.
template <class T, class Fn>
std::vector<T> map_chunks(std::size_t n, std::size_t chunks, unsigned threads, Fn&& fn) {
  chunks = std::max<std::size_t>(1, std::min(chunks, std::max<std::size_t>(n, 1)));
  std::vector<T> out(chunks);
  auto bounds = [&](std::size_t c) { return std::pair{n * c / chunks, n * (c + 1) / chunks}; };
  const unsigned workers = std::max(1u, std::min<unsigned>(resolve_threads(threads), unsigned(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = bounds(c);
      out[c] = fn(b, e);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
      try {
        auto [b, e] = bounds(c);
        out[c] = fn(b, e);
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Pairwise (tree) summation in index order.
double pairwise_sum(const std::vector<double>& v);

}  // namespace diagcubic
