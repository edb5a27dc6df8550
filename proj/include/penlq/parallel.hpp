#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace penlq {

/// Worker count: PENLQ_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (PENLQ_THREADS=0 also means auto).
inline unsigned thread_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("PENLQ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<unsigned>(v);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

/// Splits [0, count) into at most `threads` contiguous ranges and calls
/// fn(chunk, begin, end) for each, concurrently. Results must be combined by
/// the caller in chunk order (or with an order-independent reduction). The
/// first exception thrown by any chunk is rethrown.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
  threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count)));
  if (threads <= 1) {
    fn(0u, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned c = 0; c < threads; ++c) {
      const std::uint64_t begin = count * c / threads;
      const std::uint64_t end = count * (c + 1) / threads;
      workers.emplace_back([&, c, begin, end] {
        try {
          fn(c, begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// splitmix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace penlq
