#include "pacon/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pacon/numerics.hpp"

namespace pacon {

double loss(const ReturnQuadruple& q) {
  const double simplified_gap = q.simplified - q.simplified_prime;
  if (simplified_gap > 0.0) return std::max(q.original_prime - q.original, 0.0);
  if (simplified_gap < 0.0) return std::max(q.original - q.original_prime, 0.0);
  return 0.0;
}

double bound_loss(const OnlineSample& s) {
  const double simplified_gap = s.simplified - s.simplified_prime;
  if (simplified_gap > 0.0) return std::max(s.upper_prime - s.lower, 0.0);
  if (simplified_gap < 0.0) return std::max(s.upper - s.lower_prime, 0.0);
  return 0.0;
}

bool dominance_holds(const ReturnQuadruple& q, const OnlineSample& s) {
  return bound_loss(s) >= loss(q);
}

double empirical_tdf_at(std::span<const double> samples, double delta) {
  if (samples.empty()) throw std::invalid_argument("tail distribution needs samples");
  std::size_t above = 0;
  for (double v : samples)
    if (v > delta) ++above;
  return static_cast<double>(above) / static_cast<double>(samples.size());
}

std::vector<double> empirical_tdf(std::span<const double> samples,
                                  std::span<const double> grid) {
  if (samples.empty()) throw std::invalid_argument("tail distribution needs samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out(grid.size());
  const double total = static_cast<double>(sorted.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), grid[k]);
    out[k] = static_cast<double>(sorted.end() - it) / total;
  }
  return out;
}

double beta_value(double tdf, double alpha) {
  const double keep = 1.0 - alpha;
  return std::min(1.0, tdf / (keep * keep) + 2.0 * alpha - alpha * alpha);
}

std::vector<double> beta_curve(std::span<const double> tdf_values, double alpha) {
  std::vector<double> out(tdf_values.size());
  for (std::size_t i = 0; i < tdf_values.size(); ++i) out[i] = beta_value(tdf_values[i], alpha);
  return out;
}

std::vector<double> make_delta_grid(double step, double max_value) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  const double top = std::max(max_value, 0.0) + 1.0;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(top / step) + 2);
  for (double v = 0.0; v <= top; v += step) grid.push_back(v);
  return grid;
}

CharacterizationReport characterize_online(std::span<const OnlineSample> samples, double alpha,
                                           double grid_step) {
  if (samples.empty()) throw std::invalid_argument("characterization needs at least one sample");
  CharacterizationReport report;
  report.alpha = alpha;

  report.bound_loss_samples.reserve(samples.size());
  std::vector<double> simplified(samples.size());
  std::vector<double> simplified_prime(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    report.bound_loss_samples.push_back(bound_loss(samples[i]));
    simplified[i] = samples[i].simplified;
    simplified_prime[i] = samples[i].simplified_prime;
  }

  const double max_sample =
      *std::max_element(report.bound_loss_samples.begin(), report.bound_loss_samples.end());
  report.delta_grid = make_delta_grid(grid_step, max_sample);
  report.bound_loss_tdf = empirical_tdf(report.bound_loss_samples, report.delta_grid);
  report.beta = beta_curve(report.bound_loss_tdf, alpha);

  report.delta_star = std::abs(mean(simplified) - mean(simplified_prime));
  report.beta_at_zero = beta_value(empirical_tdf_at(report.bound_loss_samples, 0.0), alpha);
  report.beta_at_half_delta_star =
      beta_value(empirical_tdf_at(report.bound_loss_samples, 0.5 * report.delta_star), alpha);
  report.beta_at_delta_star =
      beta_value(empirical_tdf_at(report.bound_loss_samples, report.delta_star), alpha);
  return report;
}

OfflineCharacterization characterize_offline(std::span<const ReturnQuadruple> quadruples,
                                             std::span<const double> grid, double delta_star) {
  if (quadruples.empty()) throw std::invalid_argument("characterization needs at least one sample");
  OfflineCharacterization out;
  out.loss_samples.reserve(quadruples.size());
  for (const ReturnQuadruple& q : quadruples) out.loss_samples.push_back(loss(q));
  out.loss_tdf = empirical_tdf(out.loss_samples, grid);
  out.loss_tdf_at_zero = empirical_tdf_at(out.loss_samples, 0.0);
  out.loss_tdf_at_half_delta_star = empirical_tdf_at(out.loss_samples, 0.5 * delta_star);
  out.loss_tdf_at_delta_star = empirical_tdf_at(out.loss_samples, delta_star);
  return out;
}

BoundDiagnostics verify_bound_guarantees(std::span<const ReturnQuadruple> quadruples,
                                         std::span<const OnlineSample> samples,
                                         std::span<const double> grid, double alpha) {
  if (quadruples.size() != samples.size() || quadruples.empty())
    throw std::invalid_argument("verification needs paired nonempty sample sets");
  const double count = static_cast<double>(quadruples.size());

  BoundDiagnostics diag;
  std::size_t dominated = 0;
  for (std::size_t i = 0; i < quadruples.size(); ++i)
    if (dominance_holds(quadruples[i], samples[i])) ++dominated;
  diag.lambda_hat = static_cast<double>(dominated) / count;

  const double keep = 1.0 - alpha;
  const double target = keep * keep;
  const double binomial_se = std::sqrt(target * (1.0 - target) / count);
  diag.lambda_floor = target - 3.0 * binomial_se;
  diag.lambda_ok = diag.lambda_hat >= diag.lambda_floor;

  std::vector<double> losses;
  losses.reserve(quadruples.size());
  for (const ReturnQuadruple& q : quadruples) losses.push_back(loss(q));
  const std::vector<double> loss_tdf = empirical_tdf(losses, grid);

  std::vector<double> bound_losses;
  bound_losses.reserve(samples.size());
  for (const OnlineSample& s : samples) bound_losses.push_back(bound_loss(s));
  const std::vector<double> beta =
      beta_curve(empirical_tdf(bound_losses, grid), alpha);

  std::size_t ok = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double p = loss_tdf[k];
    const double slack = 3.0 * std::sqrt(std::max(p * (1.0 - p), 1.0 / count) / count);
    if (p <= beta[k] + slack) {
      ++ok;
    } else {
      diag.offending_deltas.push_back(grid[k]);
    }
  }
  diag.beta_dominance_fraction = static_cast<double>(ok) / static_cast<double>(grid.size());
  return diag;
}

}  // namespace pacon
