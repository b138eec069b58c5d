#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pacon/belief.hpp"
#include "pacon/filter.hpp"
#include "pacon/models.hpp"
#include "pacon/reward.hpp"
#include "pacon/rng.hpp"

namespace pacon {

/// Per-level observation counts: the root level generates
/// `root_observations`, deeper levels dwindle as
/// max{1, floor(root_observations / ((level-1) * dwindle))}.
struct ObservationSchedule {
  int root_observations = 1;  // n_z at level 1
  double dwindle = 1.0;       // c > 0
  int horizon = 1;            // L

  int observations_at(int level) const;
};

/// One stochastic belief-update realization at a tree node.
struct BeliefRealization {
  ParticleBelief weighted_posterior;  // propagated states, updated weights
  ParticleBelief posterior;           // resampled, equal weights
  bool degenerate = false;
};

struct BranchNode {
  int depth = 1;                 // 1..L
  StateVec observation{};        // z at this depth
  StateVec ground_truth{};       // propagated state that generated z
  int parent_realization = -1;   // realization index in the parent node
  int observation_slot = 0;      // which of the parent's scheduled draws
  std::vector<BeliefRealization> realizations;  // n_b entries
  std::vector<std::unique_ptr<BranchNode>> children;
};

struct TreeParams {
  ObservationSchedule schedule;
  int belief_realizations = 1;   // n_b
  /// Caps the number of root-to-leaf observation sequences; 0 builds the
  /// full schedule (guarded against blow-up). Pruned trees are bit-identical
  /// to full trees restricted to the surviving paths.
  std::int64_t branch_cap = 0;
};

/// Two policy trees grown from one root belief. Branch i of each tree shares
/// the same root state draw, which is the only coupling between the two
/// observation sequences.
struct CoupledTrees {
  ParticleBelief root;
  std::vector<StateVec> root_states;
  PolicySequence policy;
  PolicySequence policy_prime;
  TreeParams params;
  std::vector<std::unique_ptr<BranchNode>> tree;
  std::vector<std::unique_ptr<BranchNode>> tree_prime;
  /// Surviving observation-sequence paths as digit tuples
  /// [o_1, j_1, o_2, ..., j_{L-1}, o_L], lexicographically sorted.
  std::vector<std::vector<int>> selected_paths;
  RngStream base_stream;
  int degenerate_steps = 0;
};

/// Uniform draw of `count` distinct-index states via partial Fisher-Yates.
/// Expects a resampled (equal-weight) belief.
std::vector<StateVec> subsample_states(const ParticleBelief& belief, int count, RngStream& rng);

CoupledTrees build_coupled_trees(const ParticleBelief& root, const PolicySequence& policy,
                                 const PolicySequence& policy_prime, const TreeParams& params,
                                 const TransitionModel& motion,
                                 const BeaconObservationModel& obs_model, const RngStream& rng);

/// One policy's root-to-leaf slice: node, chosen realization and the belief
/// the filter step started from, per level.
struct BranchStep {
  const BranchNode* node = nullptr;
  int realization = 0;
  const ParticleBelief* prior = nullptr;
};

struct BranchView {
  std::vector<BranchStep> steps;
  std::uint64_t path_key = 0;  // policy-qualified digit hash for stream derivation
  int degenerate_steps = 0;
};

struct BranchPair {
  BranchView branch;        // under policy
  BranchView branch_prime;  // under policy_prime
};

/// Every root-to-leaf branch pair in a fixed deterministic order
/// (path-lexicographic, leaf realizations innermost).
std::vector<BranchPair> enumerate_branches(const CoupledTrees& trees);

/// Reward inputs for one branch, in step order.
std::vector<BeliefStep> branch_belief_steps(const BranchView& branch,
                                            const PolicySequence& policy);

}  // namespace pacon
