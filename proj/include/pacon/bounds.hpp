#pragma once

#include <span>

#include "pacon/simplify.hpp"

namespace pacon {

enum class BoundKind {
  kClt,     // normal-quantile interval from replicate standard error
  kMinMax,  // probability-one interval from belief state extremes (1-D toy)
};

struct BoundSpec {
  double alpha = 0.01;  // in [0, 1)
  int replicate_count = 2;
  SimplificationVariant variant = SimplificationVariant::kRootFixedSeed;
  BoundKind kind = BoundKind::kClt;
  /// Pin the normal quantile to the rounded value 2.56 used by the
  /// reference result tables (nearest hundredth for other alphas).
  bool paper_rounding = false;

  double quantile() const;  // z_{alpha/2}
};

/// Inverse standard-normal CDF. Rational approximation refined with one
/// Halley step; absolute error well under 1e-9 over (0, 1).
double inverse_normal_cdf(double p);

/// Sample standard deviation of the replicates (1/(m-1) normalization):
/// the estimated standard error of a single simplified return.
double estimate_se(std::span<const double> replicates);

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  double se_hat = 0.0;
  /// upper - center; for CLT bounds the interval is symmetric so this equals
  /// center - lower. Min/max intervals are generally asymmetric.
  double radius = 0.0;
};

/// Interval around a simplified return: radius z_{alpha/2} * sqrt(2) * se for
/// the fixed-seed variant (zero subsample covariance), z_{alpha/2} * 2 * se
/// for the per-level variant.
BoundPair clt_bounds(double simplified_return, double se_hat, const BoundSpec& spec);

BoundPair minmax_bounds(double simplified_return, double lower, double upper, double se_hat);

struct CoverageSample {
  double original_return = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Fraction of samples whose interval contains the original return.
/// Test-side certification of the coverage constraint.
double coverage_probe(std::span<const CoverageSample> samples);

}  // namespace pacon
