// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef REGVAR_PARALLEL_HPP
#define REGVAR_PARALLEL_HPP

#include <cstdlib>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace regvar {

/// Thread cap: min(hardware, REGVAR_THREADS if set). Always >= 1.
inline unsigned thread_cap() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("REGVAR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < n) n = static_cast<unsigned>(v);
  }
  return n;
}

/// Runs fn(i) for i in [0, count). Each index writes only its own slot in the
/// caller's output, so the result is independent of scheduling. The first
/// worker exception is rethrown on the calling thread after the join.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned threads = thread_cap();
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned used = static_cast<unsigned>(
      std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(used);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < used; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += used) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace regvar

#endif  // REGVAR_PARALLEL_HPP
