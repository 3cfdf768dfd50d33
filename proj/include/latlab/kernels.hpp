#pragma once

// Data-parallel loops used by the scans (word-ball products, displacement
// minima, per-sample evaluations). Each kernel has a serial reference that
// produces identical results; the parallel version only changes scheduling.

#include "latlab/common.hpp"

#include <cstddef>
#include <exception>
#include <limits>
#include <type_traits>
#include <vector>

namespace latlab::kernels {

struct ArgMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = static_cast<std::size_t>(-1);
};

inline bool better(const ArgMin& a, const ArgMin& b) {
  return a.value < b.value || (a.value == b.value && a.index < b.index);
}

template <class F>
auto map_serial(std::size_t n, F&& f) {
  using R = std::decay_t<decltype(f(std::size_t{0}))>;
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

template <class F>
auto map_parallel(std::size_t n, F&& f) {
  using R = std::decay_t<decltype(f(std::size_t{0}))>;
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  // rethrow the error the serial loop would have hit first
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class F>
auto map(Exec exec, std::size_t n, F&& f) {
  return exec == Exec::Serial ? map_serial(n, f) : map_parallel(n, f);
}

/// Smallest f(i); ties resolve to the lowest index. Infinite values are skipped.
template <class F>
ArgMin argmin_serial(std::size_t n, F&& f) {
  ArgMin best;
  for (std::size_t i = 0; i < n; ++i) {
    const ArgMin cand{f(i), i};
    if (better(cand, best)) best = cand;
  }
  return best;
}

template <class F>
ArgMin argmin_parallel(std::size_t n, F&& f) {
  const std::vector<double> values = map_parallel(n, f);
  return argmin_serial(n, [&](std::size_t i) { return values[i]; });
}

template <class F>
ArgMin argmin(Exec exec, std::size_t n, F&& f) {
  return exec == Exec::Serial ? argmin_serial(n, f) : argmin_parallel(n, f);
}

}  // namespace latlab::kernels
