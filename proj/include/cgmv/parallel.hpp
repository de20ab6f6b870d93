#pragma once
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cgmv {

inline int thread_count() {
  if (const char* e = std::getenv("CGMV_THREADS")) {
    int n = std::atoi(e);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

// static block partition; deterministic regardless of thread count since each
// index writes its own slot
template <class F>
void parallel_for(long n, F&& body) {
  int nt = thread_count();
  if (nt <= 1 || n < 64) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  if (long(nt) > n) nt = int(n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    long lo = n * t / nt, hi = n * (t + 1) / nt;
    pool.emplace_back([&body, lo, hi] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace cgmv
