#include "pacon/belief.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pacon {

ParticleBelief::ParticleBelief(int dim, std::vector<Particle> particles, int timestamp,
                               bool normalized)
    : particles_(std::move(particles)), dim_(dim), timestamp_(timestamp), normalized_(normalized) {
  if (dim < 1 || dim > kMaxStateDim) throw std::invalid_argument("belief dimension out of range");
  if (particles_.empty()) throw std::invalid_argument("belief needs at least one particle");
  for (const Particle& p : particles_) {
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight))
      throw std::invalid_argument("particle weight must be finite and nonnegative");
    for (int d = 0; d < dim; ++d)
      if (!std::isfinite(p.state[d])) throw std::invalid_argument("particle state must be finite");
  }
}

ParticleBelief ParticleBelief::equal_weights(int dim, std::vector<StateVec> states, int timestamp) {
  if (states.empty()) throw std::invalid_argument("belief needs at least one particle");
  std::vector<Particle> particles(states.size());
  const double w = 1.0 / static_cast<double>(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) particles[i] = Particle{states[i], w};
  return ParticleBelief(dim, std::move(particles), timestamp, true);
}

double ParticleBelief::weight_sum() const {
  double s = 0.0;
  for (const Particle& p : particles_) s += p.weight;
  return s;
}

StateVec ParticleBelief::weighted_mean() const {
  StateVec mean{0.0, 0.0};
  for (const Particle& p : particles_)
    for (int d = 0; d < dim_; ++d) mean[d] += p.weight * p.state[d];
  return mean;
}

}  // namespace pacon
