#include "pacon/reward.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pacon/numerics.hpp"

namespace pacon {

EntropyResult entropy_estimate(const ParticleBelief& prior, const ParticleBelief& posterior,
                               const StateVec& action, const StateVec& observation,
                               const TransitionModel& motion,
                               const BeaconObservationModel& obs_model) {
  const int n = prior.size();
  if (posterior.size() != n)
    throw std::invalid_argument("prior/posterior particle counts must match");
  const int dim = prior.dim();

  bool degenerate = false;
  auto floored_log = [&degenerate](double x) {
    if (x <= 0.0 || !std::isfinite(x)) {
      degenerate = true;
      return std::log(kLogFloor);
    }
    return std::log(x);
  };

  // Observation densities at the propagated states, shared by the
  // log-likelihood term (posterior weights) and the evidence term (prior
  // weights, index-aligned).
  std::vector<double> obs_density(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    obs_density[static_cast<std::size_t>(j)] =
        obs_model.likelihood(posterior.particle(j).state, observation);

  std::vector<double> evidence_terms(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    evidence_terms[static_cast<std::size_t>(i)] =
        prior.particle(i).weight * obs_density[static_cast<std::size_t>(i)];
  const double evidence = pairwise_sum(evidence_terms);

  // Transition-mixture constants hoisted out of the O(N^2) loop.
  const double coeff = -0.5 / motion.noise_scale;
  const double norm = std::pow(2.0 * std::numbers::pi * motion.noise_scale, -0.5 * dim);
  std::vector<StateVec> shifted(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const StateVec& x = prior.particle(i).state;
    for (int d = 0; d < dim; ++d) shifted[static_cast<std::size_t>(i)][d] = x[d] + action[d];
  }

  std::vector<double> contributions(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Particle& post = posterior.particle(j);
    double mixture = 0.0;
    if (dim == 2) {
      const double x0 = post.state[0];
      const double x1 = post.state[1];
      for (int i = 0; i < n; ++i) {
        const StateVec& mu = shifted[static_cast<std::size_t>(i)];
        const double d0 = x0 - mu[0];
        const double d1 = x1 - mu[1];
        mixture += prior.particle(i).weight * std::exp(coeff * (d0 * d0 + d1 * d1));
      }
    } else {
      const double x0 = post.state[0];
      for (int i = 0; i < n; ++i) {
        const double d0 = x0 - shifted[static_cast<std::size_t>(i)][0];
        mixture += prior.particle(i).weight * std::exp(coeff * d0 * d0);
      }
    }
    contributions[static_cast<std::size_t>(j)] =
        post.weight *
        (floored_log(obs_density[static_cast<std::size_t>(j)]) + floored_log(norm * mixture));
  }

  const double entropy = -pairwise_sum(contributions) + floored_log(evidence);
  return {entropy, degenerate};
}

MomentaryReward momentary_reward(const RewardModel& model, const ParticleBelief& prior,
                                 const ParticleBelief& weighted_posterior, const StateVec& action,
                                 const StateVec& observation) {
  switch (model.kind) {
    case RewardKind::kSampleMean:
      return {toy_reward_mean(weighted_posterior), false};
    case RewardKind::kNegDifferentialEntropy: {
      if (model.motion == nullptr || model.observation == nullptr)
        throw std::invalid_argument("entropy reward needs motion and observation models");
      const EntropyResult h = entropy_estimate(prior, weighted_posterior, action, observation,
                                               *model.motion, *model.observation);
      return {-h.entropy, h.degenerate};
    }
  }
  throw std::logic_error("unknown reward kind");
}

ReturnSample sample_return(std::span<const BeliefStep> steps, const RewardModel& model) {
  ReturnSample out;
  for (const BeliefStep& step : steps) {
    const MomentaryReward r =
        momentary_reward(model, *step.prior, *step.weighted_posterior, step.action,
                         step.observation);
    out.value += r.value;
    if (r.degenerate) ++out.degenerate_steps;
  }
  return out;
}

}  // namespace pacon
