#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rumorlab {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs body(worker_state, replica) for replica in [0, replicas) on up to
/// `threads` workers and folds the per-worker states with merge(into, from).
/// Each replica must derive its randomness from its index alone, so the
/// result does not depend on scheduling as long as merge is commutative.
template <class State, class Body, class Merge>
State parallel_replicas(std::int64_t replicas, int threads, const State& initial, Body&& body,
                        Merge&& merge) {
  const int workers = static_cast<int>(std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(replicas, 1)));
  if (workers <= 1) {
    State state = initial;
    for (std::int64_t r = 0; r < replicas; ++r) body(state, r);
    return state;
  }
  std::vector<State> states(static_cast<std::size_t>(workers), initial);
  std::atomic<std::int64_t> next{0};
  constexpr std::int64_t kChunk = 64;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      State& state = states[static_cast<std::size_t>(w)];
      try {
        for (;;) {
          const std::int64_t begin = next.fetch_add(kChunk);
          if (begin >= replicas) break;
          const std::int64_t end = std::min(replicas, begin + kChunk);
          for (std::int64_t r = begin; r < end; ++r) body(state, r);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(replicas);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  State total = initial;
  for (auto& s : states) merge(total, s);
  return total;
}

}  // namespace rumorlab
