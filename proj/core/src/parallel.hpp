#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cyclo::detail {

// Runs fn(i) for i in [0, n) on up to n_jobs threads (<= 0: hardware
// concurrency). Work is split into contiguous index blocks, so any
// per-index accumulation order inside fn is unaffected by the job count.
// The first exception thrown by a worker is rethrown in the caller.
inline void parallel_for(int n, int n_jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (n_jobs <= 0) n_jobs = int(std::thread::hardware_concurrency());
  n_jobs = std::clamp(n_jobs, 1, n);

  if (n_jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(n_jobs);
  for (int w = 0; w < n_jobs; ++w) {
    const int begin = int(std::int64_t(n) * w / n_jobs);
    const int end = int(std::int64_t(n) * (w + 1) / n_jobs);
    workers.emplace_back([&, begin, end] {
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cyclo::detail
