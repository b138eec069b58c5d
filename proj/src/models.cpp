#include "pacon/models.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pacon {

namespace {

double isotropic_gaussian_density(double sq_dist, double variance, int dim) {
  const double norm = std::pow(2.0 * std::numbers::pi * variance, -0.5 * dim);
  return norm * std::exp(-0.5 * sq_dist / variance);
}

}  // namespace

StateVec TransitionModel::sample(const StateVec& state, const StateVec& action,
                                 RngStream& rng) const {
  const double sigma = std::sqrt(noise_scale);
  StateVec out{0.0, 0.0};
  for (int d = 0; d < dim; ++d) out[d] = state[d] + action[d] + sigma * rng.normal();
  return out;
}

double TransitionModel::density(const StateVec& from, const StateVec& action,
                                const StateVec& to) const {
  StateVec mean{0.0, 0.0};
  for (int d = 0; d < dim; ++d) mean[d] = from[d] + action[d];
  return isotropic_gaussian_density(squared_distance(mean, to, dim), noise_scale, dim);
}

int BeaconObservationModel::nearest_beacon(const StateVec& state) const {
  if (beacons.empty()) throw std::invalid_argument("observation model needs at least one beacon");
  int best = 0;
  double best_sq = squared_distance(state, beacons[0], dim);
  for (int i = 1; i < static_cast<int>(beacons.size()); ++i) {
    const double sq = squared_distance(state, beacons[static_cast<std::size_t>(i)], dim);
    if (sq < best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return best;
}

double BeaconObservationModel::variance_at(const StateVec& state) const {
  const int idx = nearest_beacon(state);
  const double sq = squared_distance(state, beacons[static_cast<std::size_t>(idx)], dim);
  if (clamped) return noise_scale * std::min(1.0, sq);
  if (sq == 0.0) return kVarianceFloor;
  return noise_scale * sq;
}

StateVec BeaconObservationModel::sample(const StateVec& state, RngStream& rng) const {
  const double v = variance_at(state);
  const double sigma = std::sqrt(v);
  StateVec out{0.0, 0.0};
  for (int d = 0; d < dim; ++d) out[d] = state[d] + sigma * rng.normal();
  return out;
}

double BeaconObservationModel::likelihood(const StateVec& state,
                                          const StateVec& observation) const {
  const double v = variance_at(state);
  const double sq = squared_distance(state, observation, dim);
  if (v == 0.0) return sq == 0.0 ? kPointMassDensity : 0.0;
  const double density = isotropic_gaussian_density(sq, v, dim);
  return std::isfinite(density) ? density : 0.0;
}

double toy_reward_mean(const ParticleBelief& belief) {
  if (belief.dim() != 1) throw std::invalid_argument("toy reward needs a 1-D belief");
  double mean = 0.0;
  for (const Particle& p : belief.particles()) mean += p.weight * p.state[0];
  return mean;
}

std::pair<double, double> toy_minmax_bounds(const ParticleBelief& belief) {
  if (belief.dim() != 1) throw std::invalid_argument("toy bounds need a 1-D belief");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Particle& p : belief.particles()) {
    lo = std::min(lo, p.state[0]);
    hi = std::max(hi, p.state[0]);
  }
  return {lo, hi};
}

}  // namespace pacon
