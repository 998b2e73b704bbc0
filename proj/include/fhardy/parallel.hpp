#pragma once

// Node loops evaluated either with OpenMP or serially. Both paths store one
// value per node and sum in index order, so their results are bitwise equal.

#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

namespace fhardy {

enum class Exec { parallel, serial };

template <class T, class F>
std::vector<T> map_nodes(std::int64_t n, Exec exec, F&& f) {
  std::vector<T> out(static_cast<std::size_t>(n));
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
    return out;
  }
  std::exception_ptr err;
  std::mutex m;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(i);
    } catch (...) {
      std::lock_guard lock(m);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace fhardy
