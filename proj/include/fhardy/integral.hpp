#pragma once

#include <cstdint>

namespace fhardy {

/// Value of a numerical integral together with a two-level error estimate.
struct IntegralResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::int64_t evaluations = 0;

  IntegralResult& operator+=(const IntegralResult& o) {
    value += o.value;
    error_bound += o.error_bound;
    evaluations += o.evaluations;
    return *this;
  }
  friend IntegralResult operator+(IntegralResult a, const IntegralResult& b) { return a += b; }
};

}  // namespace fhardy
