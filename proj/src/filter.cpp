#include "pacon/filter.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pacon {

ParticleBelief propagate(const ParticleBelief& belief, const StateVec& action,
                         const TransitionModel& motion, RngStream& rng) {
  if (belief.dim() != motion.dim)
    throw std::invalid_argument("belief/motion dimension mismatch");
  std::vector<Particle> out(static_cast<std::size_t>(belief.size()));
  for (int i = 0; i < belief.size(); ++i) {
    const Particle& p = belief.particle(i);
    out[static_cast<std::size_t>(i)] = Particle{motion.sample(p.state, action, rng), p.weight};
  }
  return ParticleBelief(belief.dim(), std::move(out), belief.timestamp() + 1,
                        belief.normalized());
}

ReweightResult reweight(const ParticleBelief& belief, const StateVec& observation,
                        const BeaconObservationModel& obs_model) {
  if (belief.dim() != obs_model.dim)
    throw std::invalid_argument("belief/observation-model dimension mismatch");
  std::vector<Particle> out(static_cast<std::size_t>(belief.size()));
  double total = 0.0;
  for (int i = 0; i < belief.size(); ++i) {
    const Particle& p = belief.particle(i);
    const double w = p.weight * obs_model.likelihood(p.state, observation);
    out[static_cast<std::size_t>(i)] = Particle{p.state, w};
    total += w;
  }
  bool degenerate = false;
  if (total <= 0.0 || !std::isfinite(total)) {
    degenerate = true;
    const double uniform = 1.0 / static_cast<double>(belief.size());
    for (Particle& p : out) p.weight = uniform;
  } else {
    const double inv = 1.0 / total;
    for (Particle& p : out) p.weight *= inv;
  }
  return {ParticleBelief(belief.dim(), std::move(out), belief.timestamp(), true), degenerate};
}

std::vector<int> systematic_resample_indices(std::span<const double> weights, int count,
                                             RngStream& rng) {
  if (count < 1) throw std::invalid_argument("resample count must be positive");
  if (weights.empty()) throw std::invalid_argument("resample needs weights");
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) throw std::invalid_argument("resample needs positive total weight");

  const int n = static_cast<int>(weights.size());
  const double step = total / static_cast<double>(count);
  double pointer = rng.uniform() * step;
  std::vector<int> out(static_cast<std::size_t>(count));
  int idx = 0;
  double cumulative = weights[0];
  for (int k = 0; k < count; ++k) {
    while (pointer > cumulative && idx + 1 < n) {
      ++idx;
      cumulative += weights[static_cast<std::size_t>(idx)];
    }
    out[static_cast<std::size_t>(k)] = idx;
    pointer += step;
  }
  return out;
}

ParticleBelief low_variance_resample(const ParticleBelief& belief, int count, RngStream& rng) {
  std::vector<double> weights(static_cast<std::size_t>(belief.size()));
  for (int i = 0; i < belief.size(); ++i)
    weights[static_cast<std::size_t>(i)] = belief.particle(i).weight;
  const std::vector<int> indices = systematic_resample_indices(weights, count, rng);
  std::vector<Particle> out;
  out.reserve(static_cast<std::size_t>(count));
  const double w = 1.0 / static_cast<double>(count);
  for (int idx : indices) out.push_back(Particle{belief.particle(idx).state, w});
  return ParticleBelief(belief.dim(), std::move(out), belief.timestamp(), true);
}

FilterResult filter_step(const ParticleBelief& belief, const StateVec& action,
                         const StateVec& observation, const TransitionModel& motion,
                         const BeaconObservationModel& obs_model, RngStream& rng) {
  ParticleBelief propagated = propagate(belief, action, motion, rng);
  ReweightResult weighted = reweight(propagated, observation, obs_model);
  ParticleBelief posterior = low_variance_resample(weighted.belief, belief.size(), rng);
  return {std::move(weighted.belief), std::move(posterior), weighted.degenerate};
}

}  // namespace pacon
