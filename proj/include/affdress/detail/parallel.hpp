#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace affdress::core {

template <class Body>
void parallel_rows(std::size_t rows, unsigned threads, Body&& body) {
  if (threads <= 1 || rows <= 1) {
    for (std::size_t j = 0; j < rows; ++j) body(j);
    return;
  }
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(rows));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < rows; j = next++) {
        try {
          body(j);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace affdress::core
