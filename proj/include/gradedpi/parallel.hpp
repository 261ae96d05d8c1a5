#pragma once

// Deterministic fan-out helpers. Results never depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace gradedpi {

/// Worker count from GRADEDPI_WORKERS, defaulting to 1.
inline unsigned default_workers() {
  if (const char* env = std::getenv("GRADEDPI_WORKERS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

/// Smallest index in [0, count) for which pred(state, index) holds, where
/// each worker owns one state built by make_state().
///
/// Indices are handed out in fixed-size chunks; a worker abandons chunks
/// that start beyond the best index found so far, so the answer is the
/// global minimum regardless of scheduling.
template <class MakeState, class Pred>
std::optional<std::size_t> find_first_with_state(std::size_t count, unsigned workers, MakeState&& make_state,
                                                 Pred&& pred, std::size_t chunk = 64) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  if (count == 0) return std::nullopt;
  workers = std::max(1u, workers);
  if (workers == 1 || count <= chunk) {
    auto state = make_state();
    for (std::size_t i = 0; i < count; ++i) {
      if (pred(state, i)) return i;
    }
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{kNone};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    try {
      auto state = make_state();
      for (;;) {
        const std::size_t start = next.fetch_add(chunk);
        if (start >= count || start > best.load()) return;
        const std::size_t stop = std::min(count, start + chunk);
        for (std::size_t i = start; i < stop; ++i) {
          if (i > best.load()) break;
          if (pred(state, i)) {
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  if (best.load() == kNone) return std::nullopt;
  return best.load();
}

template <class Pred>
std::optional<std::size_t> find_first(std::size_t count, unsigned workers, Pred&& pred, std::size_t chunk = 64) {
  return find_first_with_state(
      count, workers, [] { return 0; }, [&](int&, std::size_t i) { return pred(i); }, chunk);
}

/// Computes fn(i) for every i in [0, count) and returns the results in index order.
template <class Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  workers = std::max(1u, workers);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    try {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        slots[i].emplace(fn(i));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w + 1 < workers && w + 1 < count; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace gradedpi
