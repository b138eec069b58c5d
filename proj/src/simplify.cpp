#include "pacon/simplify.hpp"

#include <stdexcept>
#include <utility>

#include "pacon/filter.hpp"

namespace pacon {

namespace {

void check_count(const SimplificationSpec& spec, int available) {
  if (spec.particle_count < 1 || spec.particle_count > available)
    throw std::invalid_argument("simplified particle count must be in [1, N]");
}

/// Index-coupled subsample of one stored filter step: n indices drawn by
/// posterior weight, then prior and propagated states taken at those indices
/// with equal weights (the resampled n-particle view of the same step).
struct SubsampledStep {
  ParticleBelief prior;
  ParticleBelief posterior;
};

SubsampledStep subsample_step(const ParticleBelief& prior, const ParticleBelief& weighted_posterior,
                              int count, RngStream& rng) {
  std::vector<double> weights(static_cast<std::size_t>(weighted_posterior.size()));
  for (int i = 0; i < weighted_posterior.size(); ++i)
    weights[static_cast<std::size_t>(i)] = weighted_posterior.particle(i).weight;
  const std::vector<int> indices = systematic_resample_indices(weights, count, rng);

  std::vector<StateVec> prior_states;
  std::vector<StateVec> posterior_states;
  prior_states.reserve(static_cast<std::size_t>(count));
  posterior_states.reserve(static_cast<std::size_t>(count));
  for (int idx : indices) {
    prior_states.push_back(prior.particle(idx).state);
    posterior_states.push_back(weighted_posterior.particle(idx).state);
  }
  const int stamp = weighted_posterior.timestamp();
  return {ParticleBelief::equal_weights(prior.dim(), std::move(prior_states), stamp - 1),
          ParticleBelief::equal_weights(prior.dim(), std::move(posterior_states), stamp)};
}

}  // namespace

ParticleBelief simplify_belief(const ParticleBelief& belief, const SimplificationSpec& spec,
                               RngStream& rng) {
  check_count(spec, belief.size());
  return low_variance_resample(belief, spec.particle_count, rng);
}

ParticleBelief frozen_root_subsample(const ParticleBelief& root, const SimplificationSpec& spec) {
  check_count(spec, root.size());
  RngStream frozen(spec.frozen_seed, stream_tag::kSimplifyRoot);
  return low_variance_resample(root, spec.particle_count, frozen);
}

SimplifiedReturn simplified_branch_return_a(const BranchView& branch, const ParticleBelief& root,
                                            const PolicySequence& policy,
                                            const SimplificationSpec& spec,
                                            const TransitionModel& motion,
                                            const BeaconObservationModel& obs_model,
                                            const RewardModel& reward,
                                            const LevelStreamProvider& streams) {
  if (spec.variant != SimplificationVariant::kRootFixedSeed)
    throw std::invalid_argument("rollout-based simplified return needs the fixed-seed variant");
  SimplifiedReturn out;
  ParticleBelief belief = frozen_root_subsample(root, spec);
  for (std::size_t level = 0; level < branch.steps.size(); ++level) {
    const StateVec& action = policy.actions[level];
    const StateVec& observation = branch.steps[level].node->observation;
    RngStream rng = streams(static_cast<int>(level) + 1);
    FilterResult step = filter_step(belief, action, observation, motion, obs_model, rng);
    const MomentaryReward r =
        momentary_reward(reward, belief, step.weighted_posterior, action, observation);
    out.value += r.value;
    if (step.degenerate || r.degenerate) ++out.degenerate_steps;
    belief = std::move(step.posterior);
  }
  return out;
}

SimplifiedReturn simplified_branch_return_b(const BranchView& branch,
                                            const PolicySequence& policy,
                                            const SimplificationSpec& spec,
                                            const RewardModel& reward,
                                            const LevelStreamProvider& streams) {
  if (spec.variant != SimplificationVariant::kPerLevel)
    throw std::invalid_argument("stored-belief simplified return needs the per-level variant");
  SimplifiedReturn out;
  for (std::size_t level = 0; level < branch.steps.size(); ++level) {
    const BranchStep& step = branch.steps[level];
    const BeliefRealization& realization =
        step.node->realizations[static_cast<std::size_t>(step.realization)];
    check_count(spec, realization.weighted_posterior.size());
    RngStream rng = streams(static_cast<int>(level) + 1);
    const SubsampledStep sub =
        subsample_step(*step.prior, realization.weighted_posterior, spec.particle_count, rng);
    const MomentaryReward r = momentary_reward(reward, sub.prior, sub.posterior,
                                               policy.actions[level], step.node->observation);
    out.value += r.value;
    if (r.degenerate || realization.degenerate) ++out.degenerate_steps;
  }
  return out;
}

RngStream replicate_level_stream(const RngStream& base_stream, const BranchView& branch,
                                 int replicate, int level) {
  return base_stream.child({stream_tag::kReplicate, branch.path_key,
                            static_cast<std::uint64_t>(replicate), stream_tag::kLevel,
                            static_cast<std::uint64_t>(level)});
}

SimplifiedReturnSet replicate_returns(const BranchView& branch, const ParticleBelief& root,
                                      const PolicySequence& policy,
                                      const SimplificationSpec& spec, int replicate_count,
                                      const TransitionModel& motion,
                                      const BeaconObservationModel& obs_model,
                                      const RewardModel& reward, const RngStream& base_stream) {
  if (replicate_count < 2) throw std::invalid_argument("need at least two replicates");
  SimplifiedReturnSet out;
  out.replicates.reserve(static_cast<std::size_t>(replicate_count));
  for (int r = 0; r < replicate_count; ++r) {
    const LevelStreamProvider streams = [&base_stream, &branch, r](int level) {
      return replicate_level_stream(base_stream, branch, r, level);
    };
    const SimplifiedReturn sample =
        spec.variant == SimplificationVariant::kRootFixedSeed
            ? simplified_branch_return_a(branch, root, policy, spec, motion, obs_model, reward,
                                         streams)
            : simplified_branch_return_b(branch, policy, spec, reward, streams);
    out.replicates.push_back(sample.value);
    out.degenerate_steps += sample.degenerate_steps;
  }
  out.primary = out.replicates.front();
  return out;
}

}  // namespace pacon
