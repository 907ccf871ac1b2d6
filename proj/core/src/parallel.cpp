#include "ctqw/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace ctqw {

namespace {
std::atomic<int> g_worker_count{0};
}

void set_worker_count(int count) { g_worker_count = count < 0 ? 0 : count; }

int worker_count() {
  const int configured = g_worker_count.load();
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w) {
    const int lo = static_cast<int>(static_cast<long>(n) * w / workers);
    const int hi = static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
    pool.emplace_back([&, lo, hi]() {
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ctqw
