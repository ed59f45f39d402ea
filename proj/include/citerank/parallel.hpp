#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace citerank {

/// Splits [0, n) into `workers` contiguous chunks and runs
/// fn(chunk_index, begin, end) for each, one thread per chunk. Results must be
/// merged by the caller in chunk order.
template <typename Fn>
void for_each_chunk(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, n);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(chunks);
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    threads.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Number of chunks for_each_chunk will use.
inline std::size_t chunk_count(std::size_t n, unsigned workers) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) return 1;
  return std::min<std::size_t>(workers, n);
}

}  // namespace citerank
