#include "pacon/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pacon {

namespace {

// Building an uncapped tree materializes every observation sequence; refuse
// schedules that would explode instead of silently thrashing.
constexpr long double kMaxUncappedPaths = 2'000'000.0L;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fold_key(std::uint64_t key, std::uint64_t value) {
  return mix64(key ^ mix64(value + 1));
}

// Digit radices of one observation-sequence path:
// [n_z(1)] then (n_b, n_z(level)) for level = 2..L.
std::vector<int> path_radices(const TreeParams& params) {
  std::vector<int> radices;
  radices.push_back(params.schedule.root_observations);
  for (int level = 2; level <= params.schedule.horizon; ++level) {
    radices.push_back(params.belief_realizations);
    radices.push_back(params.schedule.observations_at(level));
  }
  return radices;
}

std::vector<std::vector<int>> select_paths(const TreeParams& params, RngStream cap_stream) {
  const std::vector<int> radices = path_radices(params);
  long double total = 1.0L;
  for (int r : radices) total *= static_cast<long double>(r);

  const bool capped =
      params.branch_cap > 0 && total > static_cast<long double>(params.branch_cap);
  if (!capped) {
    if (total > kMaxUncappedPaths)
      throw std::invalid_argument("observation schedule too large; set a branch cap");
    std::vector<std::vector<int>> paths;
    paths.reserve(static_cast<std::size_t>(total));
    std::vector<int> digits(radices.size(), 0);
    while (true) {
      paths.push_back(digits);
      int pos = static_cast<int>(digits.size()) - 1;
      while (pos >= 0) {
        if (++digits[static_cast<std::size_t>(pos)] < radices[static_cast<std::size_t>(pos)]) break;
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    return paths;
  }

  // Uniform distinct draws over the path product space; every digit is an
  // independent uniform so every full path is equiprobable.
  std::set<std::vector<int>> selected;
  std::vector<int> digits(radices.size(), 0);
  while (selected.size() < static_cast<std::size_t>(params.branch_cap)) {
    for (std::size_t k = 0; k < radices.size(); ++k)
      digits[k] = static_cast<int>(cap_stream.below(static_cast<std::uint64_t>(radices[k])));
    selected.insert(digits);
  }
  return {selected.begin(), selected.end()};
}

struct BuildContext {
  const TransitionModel* motion;
  const BeaconObservationModel* obs_model;
  const PolicySequence* policy;
  const TreeParams* params;
  const std::vector<std::vector<int>>* paths;
};

std::unique_ptr<BranchNode> build_node(const BuildContext& ctx, int depth,
                                       const ParticleBelief& prior, const StateVec& source_state,
                                       const RngStream& node_stream, int parent_realization,
                                       int obs_slot, int begin, int end, int digit_pos,
                                       int& degenerate) {
  auto node = std::make_unique<BranchNode>();
  node->depth = depth;
  node->parent_realization = parent_realization;
  node->observation_slot = obs_slot;

  const StateVec& action = ctx.policy->actions[static_cast<std::size_t>(depth - 1)];
  RngStream gt_stream = node_stream.child(stream_tag::kGroundTruth);
  node->ground_truth = ctx.motion->sample(source_state, action, gt_stream);
  RngStream obs_stream = node_stream.child(stream_tag::kObservationNoise);
  node->observation = ctx.obs_model->sample(node->ground_truth, obs_stream);

  const int n_b = ctx.params->belief_realizations;
  node->realizations.reserve(static_cast<std::size_t>(n_b));
  for (int j = 0; j < n_b; ++j) {
    RngStream filter_stream =
        node_stream.child({stream_tag::kFilter, static_cast<std::uint64_t>(j)});
    FilterResult step = filter_step(prior, action, node->observation, *ctx.motion,
                                    *ctx.obs_model, filter_stream);
    if (step.degenerate) ++degenerate;
    node->realizations.push_back(BeliefRealization{std::move(step.weighted_posterior),
                                                   std::move(step.posterior), step.degenerate});
  }

  if (depth < ctx.params->schedule.horizon) {
    const int nz_next = ctx.params->schedule.observations_at(depth + 1);
    const auto& paths = *ctx.paths;
    // Ground-truth draws are taken once per realization over the full
    // schedule, so pruned siblings never shift surviving ones.
    std::vector<std::vector<StateVec>> draws(static_cast<std::size_t>(n_b));
    int cursor = begin;
    while (cursor < end) {
      const int j = paths[static_cast<std::size_t>(cursor)][static_cast<std::size_t>(digit_pos)];
      const int o =
          paths[static_cast<std::size_t>(cursor)][static_cast<std::size_t>(digit_pos + 1)];
      int stop = cursor;
      while (stop < end &&
             paths[static_cast<std::size_t>(stop)][static_cast<std::size_t>(digit_pos)] == j &&
             paths[static_cast<std::size_t>(stop)][static_cast<std::size_t>(digit_pos + 1)] == o)
        ++stop;
      auto& realization_draws = draws[static_cast<std::size_t>(j)];
      if (realization_draws.empty()) {
        RngStream sub_stream =
            node_stream.child({stream_tag::kSubsample, static_cast<std::uint64_t>(j)});
        realization_draws = subsample_states(
            node->realizations[static_cast<std::size_t>(j)].posterior, nz_next, sub_stream);
      }
      node->children.push_back(build_node(
          ctx, depth + 1, node->realizations[static_cast<std::size_t>(j)].posterior,
          realization_draws[static_cast<std::size_t>(o)],
          node_stream.child({stream_tag::kChild, static_cast<std::uint64_t>(j),
                             static_cast<std::uint64_t>(o)}),
          j, o, cursor, stop, digit_pos + 2, degenerate));
      cursor = stop;
    }
  }
  return node;
}

std::vector<std::unique_ptr<BranchNode>> build_policy_tree(
    const BuildContext& ctx, const ParticleBelief& root,
    const std::vector<StateVec>& root_states, const RngStream& policy_stream, int& degenerate) {
  const auto& paths = *ctx.paths;
  struct Group {
    int slot;
    int begin;
    int end;
  };
  std::vector<Group> groups;
  int cursor = 0;
  const int total = static_cast<int>(paths.size());
  while (cursor < total) {
    const int slot = paths[static_cast<std::size_t>(cursor)][0];
    int stop = cursor;
    while (stop < total && paths[static_cast<std::size_t>(stop)][0] == slot) ++stop;
    groups.push_back(Group{slot, cursor, stop});
    cursor = stop;
  }

  std::vector<std::unique_ptr<BranchNode>> nodes(groups.size());
  std::vector<int> degenerate_per_group(groups.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    const Group& group = groups[static_cast<std::size_t>(g)];
    nodes[static_cast<std::size_t>(g)] = build_node(
        ctx, 1, root, root_states[static_cast<std::size_t>(group.slot)],
        policy_stream.child({stream_tag::kChild, static_cast<std::uint64_t>(group.slot)}), -1,
        group.slot, group.begin, group.end, 1, degenerate_per_group[static_cast<std::size_t>(g)]);
  }
  for (int d : degenerate_per_group) degenerate += d;
  return nodes;
}

const BranchNode* find_child(const BranchNode* node, int realization, int slot) {
  for (const auto& child : node->children)
    if (child->parent_realization == realization && child->observation_slot == slot)
      return child.get();
  throw std::logic_error("branch path refers to a missing child node");
}

}  // namespace

int ObservationSchedule::observations_at(int level) const {
  if (level <= 1) return root_observations;
  const double scaled =
      std::floor(static_cast<double>(root_observations) / ((level - 1) * dwindle));
  return std::max(1, static_cast<int>(scaled));
}

std::vector<StateVec> subsample_states(const ParticleBelief& belief, int count, RngStream& rng) {
  const int n = belief.size();
  if (count < 1 || count > n)
    throw std::invalid_argument("subsample count must be in [1, particle count]");
  std::vector<int> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), 0);
  std::vector<StateVec> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
    out[static_cast<std::size_t>(i)] =
        belief.particle(indices[static_cast<std::size_t>(i)]).state;
  }
  return out;
}

CoupledTrees build_coupled_trees(const ParticleBelief& root, const PolicySequence& policy,
                                 const PolicySequence& policy_prime, const TreeParams& params,
                                 const TransitionModel& motion,
                                 const BeaconObservationModel& obs_model, const RngStream& rng) {
  const int horizon = params.schedule.horizon;
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (policy.horizon() != horizon || policy_prime.horizon() != horizon)
    throw std::invalid_argument("policy length must equal the schedule horizon");
  if (params.schedule.root_observations < 1)
    throw std::invalid_argument("schedule needs at least one root observation");
  if (!(params.schedule.dwindle > 0.0))
    throw std::invalid_argument("dwindle factor must be positive");
  if (params.belief_realizations < 1)
    throw std::invalid_argument("need at least one belief realization per observation");
  for (int level = 1; level <= horizon; ++level)
    if (params.schedule.observations_at(level) > root.size())
      throw std::invalid_argument("observation count exceeds particle count at some level");

  RngStream tree_stream = rng.child(stream_tag::kTree);
  RngStream root_stream = tree_stream.child(stream_tag::kRootStates);
  std::vector<StateVec> root_states =
      subsample_states(root, params.schedule.root_observations, root_stream);
  std::vector<std::vector<int>> paths =
      select_paths(params, tree_stream.child(stream_tag::kBranchCap));

  CoupledTrees trees{root,
                     std::move(root_states),
                     policy,
                     policy_prime,
                     params,
                     {},
                     {},
                     std::move(paths),
                     tree_stream,
                     0};

  BuildContext ctx{&motion, &obs_model, &trees.policy, &params, &trees.selected_paths};
  trees.tree = build_policy_tree(ctx, trees.root, trees.root_states,
                                 tree_stream.child(stream_tag::kPolicyMain),
                                 trees.degenerate_steps);
  ctx.policy = &trees.policy_prime;
  trees.tree_prime = build_policy_tree(ctx, trees.root, trees.root_states,
                                       tree_stream.child(stream_tag::kPolicyAlt),
                                       trees.degenerate_steps);
  return trees;
}

namespace {

BranchView make_branch_view(const CoupledTrees& trees,
                            const std::vector<std::unique_ptr<BranchNode>>& roots,
                            const std::vector<int>& digits, int leaf_realization,
                            std::uint64_t policy_tag) {
  const int horizon = trees.params.schedule.horizon;
  BranchView view;
  view.steps.reserve(static_cast<std::size_t>(horizon));
  view.path_key = mix64(policy_tag);

  const BranchNode* node = nullptr;
  for (const auto& candidate : roots)
    if (candidate->observation_slot == digits[0]) {
      node = candidate.get();
      break;
    }
  if (node == nullptr) throw std::logic_error("branch path refers to a missing root node");

  const ParticleBelief* prior = &trees.root;
  std::size_t digit_pos = 1;
  for (int depth = 1; depth <= horizon; ++depth) {
    const int realization =
        depth < horizon ? digits[digit_pos] : leaf_realization;
    view.steps.push_back(BranchStep{node, realization, prior});
    if (node->realizations[static_cast<std::size_t>(realization)].degenerate)
      ++view.degenerate_steps;
    view.path_key = fold_key(view.path_key, static_cast<std::uint64_t>(node->observation_slot));
    view.path_key = fold_key(view.path_key, static_cast<std::uint64_t>(realization));
    if (depth < horizon) {
      prior = &node->realizations[static_cast<std::size_t>(realization)].posterior;
      node = find_child(node, realization, digits[digit_pos + 1]);
      digit_pos += 2;
    }
  }
  return view;
}

}  // namespace

std::vector<BranchPair> enumerate_branches(const CoupledTrees& trees) {
  std::vector<BranchPair> pairs;
  const int n_b = trees.params.belief_realizations;
  pairs.reserve(trees.selected_paths.size() * static_cast<std::size_t>(n_b));
  for (const std::vector<int>& digits : trees.selected_paths) {
    for (int leaf = 0; leaf < n_b; ++leaf) {
      pairs.push_back(BranchPair{
          make_branch_view(trees, trees.tree, digits, leaf, stream_tag::kPolicyMain),
          make_branch_view(trees, trees.tree_prime, digits, leaf, stream_tag::kPolicyAlt)});
    }
  }
  return pairs;
}

std::vector<BeliefStep> branch_belief_steps(const BranchView& branch,
                                            const PolicySequence& policy) {
  std::vector<BeliefStep> steps;
  steps.reserve(branch.steps.size());
  for (std::size_t i = 0; i < branch.steps.size(); ++i) {
    const BranchStep& step = branch.steps[i];
    steps.push_back(BeliefStep{
        step.prior,
        &step.node->realizations[static_cast<std::size_t>(step.realization)].weighted_posterior,
        policy.actions[i], step.node->observation});
  }
  return steps;
}

}  // namespace pacon
