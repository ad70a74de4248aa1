#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "umbilic/linalg.hpp"

namespace umbilic {

// Grid sweeps evaluate pure functions at independent points. `serial` is the
// reference loop kept for tests and benchmarks; `parallel` splits the same
// loop over OpenMP threads. Both write result i into slot i, so the output
// does not depend on the schedule.
enum class Execution { serial, parallel };

using Grid = std::vector<Vec>;

template <class T, class Fn>
std::vector<T> map_grid(std::size_t n, Fn&& fn, Execution ex = Execution::parallel) {
  std::vector<T> out(n);
  if (ex == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  // Exceptions cannot cross the parallel region; keep the one thrown at the
  // smallest index so the error matches the serial loop.
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Tensor grid over the given axes; axis 0 varies slowest.
Grid tensor_grid(const std::vector<double>& lo, const std::vector<double>& hi,
                 const std::vector<int>& counts);

// n points evenly spaced on [lo, hi] (n == 1 gives the midpoint).
std::vector<double> linspace(double lo, double hi, int n);

int max_threads();

}  // namespace umbilic
