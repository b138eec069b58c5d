#pragma once

#include <span>

#include "pacon/belief.hpp"
#include "pacon/models.hpp"

namespace pacon {

enum class RewardKind {
  kNegDifferentialEntropy,  // navigation scenarios, O(N^2) per step
  kSampleMean,              // 1-D toy
};

struct RewardModel {
  RewardKind kind = RewardKind::kNegDifferentialEntropy;
  const TransitionModel* motion = nullptr;
  const BeaconObservationModel* observation = nullptr;
};

/// Mixture terms that vanish entirely are replaced by this floor before
/// taking logs, keeping momentary rewards finite for outlier particles.
inline constexpr double kLogFloor = 1e-300;

struct EntropyResult {
  double entropy = 0.0;
  bool degenerate = false;
};

/// Particle estimate of the posterior differential entropy after one
/// prediction/update step. `prior` holds the step's starting belief
/// {x_i, w_i}; `posterior` holds the propagated states with their updated
/// weights, index-aligned with `prior` (the correspondence is what makes the
/// observation-likelihood mixture term well defined). O(N^2).
EntropyResult entropy_estimate(const ParticleBelief& prior, const ParticleBelief& posterior,
                               const StateVec& action, const StateVec& observation,
                               const TransitionModel& motion,
                               const BeaconObservationModel& obs_model);

struct MomentaryReward {
  double value = 0.0;
  bool degenerate = false;
};

/// Momentary reward of one filter step under the given reward model.
MomentaryReward momentary_reward(const RewardModel& model, const ParticleBelief& prior,
                                 const ParticleBelief& weighted_posterior, const StateVec& action,
                                 const StateVec& observation);

/// One filter-step realization along a branch, as consumed by return
/// evaluation. Pointers refer into tree storage and stay valid while the
/// owning tree is alive.
struct BeliefStep {
  const ParticleBelief* prior = nullptr;
  const ParticleBelief* weighted_posterior = nullptr;
  StateVec action{};
  StateVec observation{};
};

struct ReturnSample {
  double value = 0.0;
  int degenerate_steps = 0;
};

/// Cumulative reward over the horizon (undiscounted sum of momentary
/// rewards, evaluated in step order).
ReturnSample sample_return(std::span<const BeliefStep> steps, const RewardModel& model);

}  // namespace pacon
