#include "pacon/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pacon/numerics.hpp"

namespace pacon {

namespace {

// Acklam's rational approximation of the probit function.
double probit_approx(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile argument must be in (0, 1)");
  double x = probit_approx(p);
  // One Halley step against the exact CDF takes the rational approximation
  // to machine precision.
  const double e = normal_cdf(x) - p;
  const double u = e / normal_pdf(x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double BoundSpec::quantile() const {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in [0, 1)");
  if (alpha == 0.0) return std::numeric_limits<double>::infinity();
  const double z = inverse_normal_cdf(1.0 - 0.5 * alpha);
  if (!paper_rounding) return z;
  // The reference tables use 2.56 for alpha = 0.01; round other alphas to
  // the nearest hundredth.
  if (std::abs(alpha - 0.01) < 1e-12) return 2.56;
  return std::round(z * 100.0) / 100.0;
}

double estimate_se(std::span<const double> replicates) {
  const std::size_t m = replicates.size();
  if (m < 2) throw std::invalid_argument("standard error needs at least two replicates");
  const double mu = mean(replicates);
  std::vector<double> sq(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = replicates[i] - mu;
    sq[i] = d * d;
  }
  return std::sqrt(pairwise_sum(sq) / static_cast<double>(m - 1));
}

BoundPair clt_bounds(double simplified_return, double se_hat, const BoundSpec& spec) {
  if (se_hat < 0.0) throw std::invalid_argument("standard error must be nonnegative");
  const double inflation =
      spec.variant == SimplificationVariant::kRootFixedSeed ? std::numbers::sqrt2 : 2.0;
  const double radius = spec.quantile() * inflation * se_hat;
  return BoundPair{simplified_return - radius, simplified_return + radius, se_hat, radius};
}

BoundPair minmax_bounds(double simplified_return, double lower, double upper, double se_hat) {
  if (lower > upper) throw std::invalid_argument("lower bound exceeds upper bound");
  return BoundPair{lower, upper, se_hat, upper - simplified_return};
}

double coverage_probe(std::span<const CoverageSample> samples) {
  if (samples.empty()) throw std::invalid_argument("coverage probe needs samples");
  std::size_t covered = 0;
  for (const CoverageSample& s : samples)
    if (s.lower <= s.original_return && s.original_return <= s.upper) ++covered;
  return static_cast<double>(covered) / static_cast<double>(samples.size());
}

}  // namespace pacon
