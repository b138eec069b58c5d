#pragma once

#include <utility>
#include <vector>

#include "pacon/belief.hpp"
#include "pacon/rng.hpp"

namespace pacon {

/// Additive linear motion: x' = x + a + noise, noise ~ N(0, noise_scale * I).
struct TransitionModel {
  int dim = 2;
  double noise_scale = 0.1;  // process noise variance per axis

  StateVec sample(const StateVec& state, const StateVec& action, RngStream& rng) const;
  double density(const StateVec& from, const StateVec& action, const StateVec& to) const;
};

/// Range-beacon sensor: z ~ N(x, v(x) * I) where v depends on the squared
/// distance to the nearest beacon. The clamped variant caps the variance at
/// noise_scale; the unclamped variant lets it grow with distance and floors
/// it at kVarianceFloor exactly on a beacon.
struct BeaconObservationModel {
  int dim = 2;
  double noise_scale = 0.1;  // w
  bool clamped = true;
  std::vector<StateVec> beacons;

  /// Variance used when the unclamped model is evaluated exactly on a beacon.
  static constexpr double kVarianceFloor = 1e-12;
  /// Density reported for a zero-variance observation that matches the state.
  static constexpr double kPointMassDensity = 1e300;

  /// Index of the closest beacon; ties go to the lowest index.
  int nearest_beacon(const StateVec& state) const;
  double variance_at(const StateVec& state) const;
  StateVec sample(const StateVec& state, RngStream& rng) const;
  double likelihood(const StateVec& state, const StateVec& observation) const;
};

/// Open-loop action sequence over the planning horizon.
struct PolicySequence {
  std::vector<StateVec> actions;

  int horizon() const { return static_cast<int>(actions.size()); }
};

/// Weighted mean of a 1-D belief (the toy momentary reward).
double toy_reward_mean(const ParticleBelief& belief);

/// (min, max) over the states of a 1-D belief; they bracket toy_reward_mean
/// for every realization.
std::pair<double, double> toy_minmax_bounds(const ParticleBelief& belief);

}  // namespace pacon
