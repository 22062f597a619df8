#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace heatgraph {

/// Worker count: HEATGRAPH_JOBS when set, otherwise `requested`, at least 1.
std::size_t resolve_jobs(std::size_t requested);

/// Evaluates fn(0..count-1) on up to `jobs` threads and returns the results
/// in index order. Output never depends on the worker count as long as fn is
/// a pure function of its index. The first exception (by index) is rethrown.
template <typename Fn>
auto parallel_map(std::size_t jobs, std::size_t count, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  static_assert(!std::is_same_v<Result, bool>, "std::vector<bool> is not safe for concurrent writes");
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::min(jobs == 0 ? std::size_t{1} : jobs, count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace heatgraph
