#pragma once

#include <span>
#include <string>
#include <vector>

#include "pacon/tree.hpp"

namespace pacon {

/// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_double(double value);

struct HistogramBin {
  double left = 0.0;
  long count = 0;
};

/// Fixed-width bins anchored at zero, covering [0, max sample].
std::vector<HistogramBin> make_histogram(std::span<const double> samples, double bin_width);

/// JSON dump of both policy trees (observations and ground-truth states per
/// node) for debugging and replay.
std::string tree_dump_text(const CoupledTrees& trees);

}  // namespace pacon
