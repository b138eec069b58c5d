#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pacon/bounds.hpp"
#include "pacon/models.hpp"
#include "pacon/reward.hpp"
#include "pacon/simplify.hpp"

namespace pacon {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind {
  kBeacon1,  // 2-D navigation, clamped observation noise
  kBeacon2,  // 2-D navigation, unclamped noise, one beacon removed
  kToy,      // 1-D diving robot, sample-mean reward
};

std::string scenario_name(ScenarioKind kind);
ScenarioKind parse_scenario(const std::string& name);

struct ExperimentConfig {
  ScenarioKind scenario = ScenarioKind::kBeacon1;
  std::uint64_t seed = 1;
  int particle_count = 300;                 // N
  std::vector<int> simplified_counts{50};   // n (one run per entry)
  int replicate_count = 50;                 // m
  int horizon = 4;                          // L
  double alpha = 0.01;
  int root_observations = 0;                // n_z at level 1; 0 picks a default
  double dwindle = 0.0;                     // c; 0 picks a default
  int belief_realizations = 1;              // n_b
  std::int64_t branch_cap = 500;
  SimplificationVariant variant = SimplificationVariant::kRootFixedSeed;
  BoundKind bound_kind = BoundKind::kClt;
  bool paper_rounding = false;
  bool offline_loss = false;
  double process_noise = 0.1;               // w
  std::vector<double> initial_low;          // per-axis square bounds; empty = default
  std::vector<double> initial_high;
  std::vector<StateVec> beacons;            // empty = scenario default layout
  std::vector<StateVec> actions;            // empty = scenario default sequences
  std::vector<StateVec> actions_prime;
  double grid_step = 0.01;
  double hist_bin_width = 0.3;
  std::string output_dir = "out";
  int threads = 0;                          // 0 = library default

  /// Parse from a JSON document; unknown keys are rejected.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  std::string to_json_text() const;

  void validate() const;
};

/// Concrete models and policies resolved from a config, defaults applied.
struct ScenarioSetup {
  int dim = 2;
  TransitionModel motion;
  BeaconObservationModel obs_model;
  PolicySequence policy;
  PolicySequence policy_prime;
  RewardKind reward_kind = RewardKind::kNegDifferentialEntropy;
  std::vector<double> initial_low;
  std::vector<double> initial_high;

  RewardModel reward_model() const;
  ParticleBelief initial_belief(int particle_count, RngStream rng) const;
};

ScenarioSetup build_scenario(const ExperimentConfig& config);

}  // namespace pacon
