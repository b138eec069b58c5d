#pragma once

#include <cstddef>
#include <span>

namespace pacon {

/// Pairwise summation with a fixed recursion pattern: the result depends only
/// on the values and their order, never on thread count, and carries better
/// rounding behavior than a running sum on long inputs.
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kCutoff = 32;
  if (values.size() <= kCutoff) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

inline double mean(std::span<const double> values) {
  return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace pacon
