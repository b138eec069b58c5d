#pragma once

#include <span>
#include <vector>

namespace pacon {

/// One joint sample of original and simplified returns for the two policies.
/// Offline-only: the online pipeline never constructs these.
struct ReturnQuadruple {
  double original = 0.0;          // g
  double original_prime = 0.0;    // g'
  double simplified = 0.0;        // simplified return under the policy
  double simplified_prime = 0.0;  // simplified return under the alternative
};

/// Everything one branch contributes online: simplified returns and their
/// interval bounds. Deliberately carries no original-return fields.
struct OnlineSample {
  double simplified = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double simplified_prime = 0.0;
  double lower_prime = 0.0;
  double upper_prime = 0.0;
};

/// Loss suffered when the simplification flips the preferred policy:
/// the adverse original-return gap when the simplified returns disagree in
/// sign, zero otherwise (ties included).
double loss(const ReturnQuadruple& q);

/// Online bound on the loss, built from the interval bounds alone.
double bound_loss(const OnlineSample& s);

/// Whether bound_loss dominates loss for this branch sample. Guaranteed
/// whenever both intervals contain their original returns.
bool dominance_holds(const ReturnQuadruple& q, const OnlineSample& s);

/// Fraction of samples strictly greater than delta, per grid point.
std::vector<double> empirical_tdf(std::span<const double> samples,
                                  std::span<const double> grid);
double empirical_tdf_at(std::span<const double> samples, double delta);

/// min{1, tdf/(1-alpha)^2 + 2*alpha - alpha^2}, elementwise.
std::vector<double> beta_curve(std::span<const double> tdf_values, double alpha);
double beta_value(double tdf, double alpha);

/// Uniform grid over [0, max_value + 1] with the given step.
std::vector<double> make_delta_grid(double step, double max_value);

/// Online characterization of one simplification: tail distribution of the
/// bound loss, its beta envelope, and the reference loss scale
/// delta* = |mean simplified return difference|.
struct CharacterizationReport {
  double alpha = 0.0;
  std::vector<double> delta_grid;
  std::vector<double> bound_loss_tdf;
  std::vector<double> beta;
  std::vector<double> bound_loss_samples;  // per branch, enumeration order
  double delta_star = 0.0;
  double beta_at_zero = 0.0;
  double beta_at_half_delta_star = 0.0;
  double beta_at_delta_star = 0.0;
  int degenerate_steps = 0;
};

CharacterizationReport characterize_online(std::span<const OnlineSample> samples, double alpha,
                                           double grid_step);

/// Offline loss statistics over the same branches, evaluated on a given
/// (online-derived) grid.
struct OfflineCharacterization {
  std::vector<double> loss_samples;
  std::vector<double> loss_tdf;
  double loss_tdf_at_zero = 0.0;
  double loss_tdf_at_half_delta_star = 0.0;
  double loss_tdf_at_delta_star = 0.0;
};

OfflineCharacterization characterize_offline(std::span<const ReturnQuadruple> quadruples,
                                             std::span<const double> grid, double delta_star);

/// Offline verification of the dominance and envelope guarantees on paired
/// branch samples: lambda_hat = fraction with bound_loss >= loss, checked
/// against (1-alpha)^2 minus binomial slack; the loss TDF checked against
/// beta plus slack on the grid.
struct BoundDiagnostics {
  double lambda_hat = 0.0;
  double lambda_floor = 0.0;
  bool lambda_ok = false;
  double beta_dominance_fraction = 0.0;  // grid points where loss TDF <= beta + slack
  std::vector<double> offending_deltas;
};

BoundDiagnostics verify_bound_guarantees(std::span<const ReturnQuadruple> quadruples,
                                         std::span<const OnlineSample> samples,
                                         std::span<const double> grid, double alpha);

}  // namespace pacon
