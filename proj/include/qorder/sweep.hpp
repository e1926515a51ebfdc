#pragma once

// Enumeration of coefficient boxes and a small deterministic worker pool.
// Workers claim indices from a shared counter and write into their own
// result slot, so the merged output never depends on the worker count.

#include "qorder/ternary_form.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace qorder {

struct FormBox {
  std::vector<TernaryForm> forms;  // lexicographic in (a, b, c, u, v, w)
  std::size_t degenerate = 0;
};

inline FormBox enumerate_forms(int bound) {
  if (bound < 0) throw InputError("coefficient bound must be nonnegative");
  FormBox box;
  std::array<int, 6> c;
  for (c[0] = -bound; c[0] <= bound; ++c[0])
    for (c[1] = -bound; c[1] <= bound; ++c[1])
      for (c[2] = -bound; c[2] <= bound; ++c[2])
        for (c[3] = -bound; c[3] <= bound; ++c[3])
          for (c[4] = -bound; c[4] <= bound; ++c[4])
            for (c[5] = -bound; c[5] <= bound; ++c[5]) {
              FormCoefficients k{c[0], c[1], c[2], c[3], c[4], c[5]};
              if (TernaryForm::half_discriminant_of(k) == 0) {
                ++box.degenerate;
                continue;
              }
              box.forms.emplace_back(c[0], c[1], c[2], c[3], c[4], c[5]);
            }
  return box;
}

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// results[n] = fn(n) for n < count. The first exception (by index) is
// rethrown after all workers stop; remaining items are skipped once one fails.
template <class R>
std::vector<R> parallel_map(std::size_t count, unsigned workers, const std::function<R(std::size_t)>& fn) {
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      std::size_t n = next.fetch_add(1, std::memory_order_relaxed);
      if (n >= count) return;
      try {
        slots[n].emplace(fn(n));
      } catch (...) {
        errors[n] = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) pool.emplace_back(run);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace qorder
