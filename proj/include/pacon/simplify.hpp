#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pacon/belief.hpp"
#include "pacon/models.hpp"
#include "pacon/reward.hpp"
#include "pacon/rng.hpp"
#include "pacon/tree.hpp"

namespace pacon {

enum class SimplificationVariant {
  kRootFixedSeed,  // (a) subsample the root once with a frozen seed, re-filter with n particles
  kPerLevel,       // (b) subsample the stored full-size tree beliefs at every level
};

struct SimplificationSpec {
  SimplificationVariant variant = SimplificationVariant::kRootFixedSeed;
  int particle_count = 1;        // n, 1 <= n <= N
  std::uint64_t frozen_seed = 0; // root-subsample stream for the fixed-seed variant
};

/// Weight-proportional reduction to n particles (systematic resampling).
ParticleBelief simplify_belief(const ParticleBelief& belief, const SimplificationSpec& spec,
                               RngStream& rng);

/// The fixed-seed variant's root subsample: identical particle set on every
/// call, across all branches and replicates.
ParticleBelief frozen_root_subsample(const ParticleBelief& root, const SimplificationSpec& spec);

/// Supplies the filter/subsample stream for level 1..L of one simplified
/// rollout. Injectable so a rollout can be replayed against tree-built
/// streams.
using LevelStreamProvider = std::function<RngStream(int level)>;

struct SimplifiedReturn {
  double value = 0.0;
  int degenerate_steps = 0;
};

/// Fixed-seed variant: subsample the root once, then run the n-particle
/// filter along the branch's observation sequence and accumulate momentary
/// rewards. O(n^2) per step for the entropy reward.
SimplifiedReturn simplified_branch_return_a(const BranchView& branch, const ParticleBelief& root,
                                            const PolicySequence& policy,
                                            const SimplificationSpec& spec,
                                            const TransitionModel& motion,
                                            const BeaconObservationModel& obs_model,
                                            const RewardModel& reward,
                                            const LevelStreamProvider& streams);

/// Per-level variant: subsample each stored full-size posterior to n and
/// evaluate the momentary reward on the subsampled system; no n-particle
/// filtering is run. Index-coupled subsetting keeps the prior/propagated
/// correspondence the entropy estimator needs.
SimplifiedReturn simplified_branch_return_b(const BranchView& branch,
                                            const PolicySequence& policy,
                                            const SimplificationSpec& spec,
                                            const RewardModel& reward,
                                            const LevelStreamProvider& streams);

struct SimplifiedReturnSet {
  double primary = 0.0;             // replicate 1, the reported simplified return
  std::vector<double> replicates;   // all m replicates, primary included at [0]
  int degenerate_steps = 0;
};

/// m independent simplified-return draws for one branch. The fixed-seed
/// variant reuses the frozen root subsample and redraws filter noise; the
/// per-level variant redraws subsamples.
SimplifiedReturnSet replicate_returns(const BranchView& branch, const ParticleBelief& root,
                                      const PolicySequence& policy,
                                      const SimplificationSpec& spec, int replicate_count,
                                      const TransitionModel& motion,
                                      const BeaconObservationModel& obs_model,
                                      const RewardModel& reward, const RngStream& base_stream);

/// Stream used by replicate r of one branch at a given level, derived from
/// the branch's path key so replicates parallelize reproducibly.
RngStream replicate_level_stream(const RngStream& base_stream, const BranchView& branch,
                                 int replicate, int level);

}  // namespace pacon
