// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace anderson {

/// Hardware concurrency, at least 1.
inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Evaluates f(i) for i in [0, n) on a small pool and returns the results in
/// index order, so reductions downstream never see the schedule.
template <typename F>
auto parallel_map(std::size_t n, F&& f, unsigned threads = default_threads())
    -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out(n);
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace anderson
