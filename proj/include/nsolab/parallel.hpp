#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nsolab {

// Evaluates f(0..count-1) on up to `workers` threads; results are stored by index,
// so the output does not depend on scheduling.
template <class F>
auto parallel_map(int count, int workers, F&& f) {
  using T = decltype(f(0));
  std::vector<T> out(count);
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto body = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  int n = std::min(workers, count);
  for (int w = 0; w < n; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace nsolab
