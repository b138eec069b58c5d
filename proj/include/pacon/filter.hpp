#pragma once

#include <span>
#include <vector>

#include "pacon/belief.hpp"
#include "pacon/models.hpp"
#include "pacon/rng.hpp"

namespace pacon {

/// Draw each particle's next state from the motion model; weights unchanged.
ParticleBelief propagate(const ParticleBelief& belief, const StateVec& action,
                         const TransitionModel& motion, RngStream& rng);

struct ReweightResult {
  ParticleBelief belief;
  /// Set when every likelihood underflowed to zero; weights fall back to
  /// uniform instead of failing, so long rollouts stay alive.
  bool degenerate = false;
};

/// Multiply weights by the observation likelihood and renormalize.
ReweightResult reweight(const ParticleBelief& belief, const StateVec& observation,
                        const BeaconObservationModel& obs_model);

/// Systematic (single-offset) sweep over normalized-or-not weights: `count`
/// indices whose copy counts land in {floor(count*w), ceil(count*w)}.
std::vector<int> systematic_resample_indices(std::span<const double> weights, int count,
                                             RngStream& rng);

/// Systematic (single-offset) resampling to `count` equally weighted
/// particles.
ParticleBelief low_variance_resample(const ParticleBelief& belief, int count, RngStream& rng);

struct FilterResult {
  /// Propagated states carrying the updated weights, index-aligned with the
  /// input belief (what the entropy estimator consumes).
  ParticleBelief weighted_posterior;
  /// Resampled posterior: equal weights, same particle count as the input.
  ParticleBelief posterior;
  bool degenerate = false;
};

/// One bootstrap-filter step: propagate, reweight, resample to the input
/// particle count. A single draw from the stochastic belief update.
FilterResult filter_step(const ParticleBelief& belief, const StateVec& action,
                         const StateVec& observation, const TransitionModel& motion,
                         const BeaconObservationModel& obs_model, RngStream& rng);

}  // namespace pacon
