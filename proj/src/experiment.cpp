#include "pacon/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pacon/numerics.hpp"

namespace pacon {

namespace {

constexpr double kTimingFloorSeconds = 0.010;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct BranchWork {
  const BranchView* view;
  const PolicySequence* policy;
};

double simplified_once(const CoupledTrees& trees, const ScenarioSetup& setup,
                       const BranchWork& work, const SimplificationSpec& spec,
                       const RngStream& replicate_base, int replicate, int& degenerate_steps) {
  const RewardModel reward = setup.reward_model();
  const LevelStreamProvider streams = [&replicate_base, &work, replicate](int level) {
    return replicate_level_stream(replicate_base, *work.view, replicate, level);
  };
  const SimplifiedReturn sample =
      spec.variant == SimplificationVariant::kRootFixedSeed
          ? simplified_branch_return_a(*work.view, trees.root, *work.policy, spec, setup.motion,
                                       setup.obs_model, reward, streams)
          : simplified_branch_return_b(*work.view, *work.policy, spec, reward, streams);
  degenerate_steps += sample.degenerate_steps;
  return sample.value;
}

// Probability-one interval for the toy: per-level state extremes of the
// stored full-size posteriors, summed over the horizon.
std::pair<double, double> branch_minmax(const BranchView& view) {
  double lower = 0.0;
  double upper = 0.0;
  for (const BranchStep& step : view.steps) {
    const auto [lo, hi] = toy_minmax_bounds(
        step.node->realizations[static_cast<std::size_t>(step.realization)].weighted_posterior);
    lower += lo;
    upper += hi;
  }
  return {lower, upper};
}

double original_return(const ScenarioSetup& setup, const BranchWork& work,
                       int& degenerate_steps) {
  const RewardModel reward = setup.reward_model();
  const ReturnSample sample =
      sample_return(branch_belief_steps(*work.view, *work.policy), reward);
  degenerate_steps += sample.degenerate_steps;
  return sample.value;
}

struct SimplifiedPhase {
  std::vector<std::vector<double>> replicates;        // [branch][replicate]
  std::vector<std::vector<double>> replicates_prime;  // [branch][replicate]
  int degenerate_steps = 0;
  double primary_seconds = 0.0;
  double bounds_seconds = 0.0;
  std::vector<OnlineSample> online;
};

SimplifiedPhase run_simplified_phases(const CoupledTrees& trees,
                                      const std::vector<BranchPair>& branches,
                                      const ScenarioSetup& setup, const SimplificationSpec& spec,
                                      const BoundSpec& bound_spec) {
  const int branch_count = static_cast<int>(branches.size());
  const int m = bound_spec.replicate_count;
  const RngStream replicate_base = trees.base_stream.child(
      {stream_tag::kSimplifiedPhase, static_cast<std::uint64_t>(spec.particle_count)});

  SimplifiedPhase phase;
  phase.replicates.assign(static_cast<std::size_t>(branch_count), {});
  phase.replicates_prime.assign(static_cast<std::size_t>(branch_count), {});
  std::vector<int> degenerate(static_cast<std::size_t>(branch_count), 0);

  const auto primary_start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < branch_count; ++b) {
    auto& slot = phase.replicates[static_cast<std::size_t>(b)];
    auto& slot_prime = phase.replicates_prime[static_cast<std::size_t>(b)];
    slot.reserve(static_cast<std::size_t>(m));
    slot_prime.reserve(static_cast<std::size_t>(m));
    int& dg = degenerate[static_cast<std::size_t>(b)];
    const BranchWork work{&branches[static_cast<std::size_t>(b)].branch, &trees.policy};
    const BranchWork work_prime{&branches[static_cast<std::size_t>(b)].branch_prime,
                                &trees.policy_prime};
    slot.push_back(simplified_once(trees, setup, work, spec, replicate_base, 0, dg));
    slot_prime.push_back(simplified_once(trees, setup, work_prime, spec, replicate_base, 0, dg));
  }
  phase.primary_seconds = elapsed_seconds(primary_start);

  const auto bounds_start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < branch_count; ++b) {
    auto& slot = phase.replicates[static_cast<std::size_t>(b)];
    auto& slot_prime = phase.replicates_prime[static_cast<std::size_t>(b)];
    int& dg = degenerate[static_cast<std::size_t>(b)];
    const BranchWork work{&branches[static_cast<std::size_t>(b)].branch, &trees.policy};
    const BranchWork work_prime{&branches[static_cast<std::size_t>(b)].branch_prime,
                                &trees.policy_prime};
    for (int r = 1; r < m; ++r) {
      slot.push_back(simplified_once(trees, setup, work, spec, replicate_base, r, dg));
      slot_prime.push_back(
          simplified_once(trees, setup, work_prime, spec, replicate_base, r, dg));
    }
  }

  phase.online.resize(static_cast<std::size_t>(branch_count));
  for (int b = 0; b < branch_count; ++b) {
    const auto& reps = phase.replicates[static_cast<std::size_t>(b)];
    const auto& reps_prime = phase.replicates_prime[static_cast<std::size_t>(b)];
    const double se = m >= 2 ? estimate_se(reps) : 0.0;
    const double se_prime = m >= 2 ? estimate_se(reps_prime) : 0.0;
    BoundPair bounds;
    BoundPair bounds_prime;
    if (bound_spec.kind == BoundKind::kClt) {
      bounds = clt_bounds(reps.front(), se, bound_spec);
      bounds_prime = clt_bounds(reps_prime.front(), se_prime, bound_spec);
    } else {
      const auto [lo, hi] = branch_minmax(branches[static_cast<std::size_t>(b)].branch);
      bounds = minmax_bounds(reps.front(), lo, hi, se);
      const auto [lo_p, hi_p] = branch_minmax(branches[static_cast<std::size_t>(b)].branch_prime);
      bounds_prime = minmax_bounds(reps_prime.front(), lo_p, hi_p, se_prime);
    }
    phase.online[static_cast<std::size_t>(b)] =
        OnlineSample{reps.front(),       bounds.lower,       bounds.upper,
                     reps_prime.front(), bounds_prime.lower, bounds_prime.upper};
  }
  phase.bounds_seconds = elapsed_seconds(bounds_start);

  for (int d : degenerate) phase.degenerate_steps += d;
  return phase;
}

}  // namespace

TreeParams resolved_tree_params(const ExperimentConfig& config) {
  TreeParams params;
  params.schedule.horizon = config.horizon;
  if (config.root_observations > 0) {
    params.schedule.root_observations = config.root_observations;
  } else {
    std::int64_t target =
        config.branch_cap > 0 ? config.branch_cap : config.particle_count;
    params.schedule.root_observations =
        static_cast<int>(std::min<std::int64_t>(target, config.particle_count));
  }
  params.schedule.dwindle =
      config.dwindle > 0.0 ? config.dwindle : std::max(1.0, static_cast<double>(config.horizon));
  params.belief_realizations = config.belief_realizations;
  params.branch_cap = config.branch_cap;
  return params;
}

std::vector<OnlineSample> collect_online_samples(const CoupledTrees& trees,
                                                 const std::vector<BranchPair>& branches,
                                                 const ScenarioSetup& setup,
                                                 const SimplificationSpec& spec,
                                                 const BoundSpec& bound_spec) {
  return run_simplified_phases(trees, branches, setup, spec, bound_spec).online;
}

std::vector<ReturnQuadruple> collect_return_quadruples(
    const CoupledTrees& trees, const std::vector<BranchPair>& branches,
    const ScenarioSetup& setup, const std::vector<OnlineSample>& online) {
  if (online.size() != branches.size())
    throw std::invalid_argument("online samples must pair with branches");
  const int branch_count = static_cast<int>(branches.size());
  std::vector<ReturnQuadruple> quadruples(static_cast<std::size_t>(branch_count));
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < branch_count; ++b) {
    int dg = 0;
    const BranchWork work{&branches[static_cast<std::size_t>(b)].branch, &trees.policy};
    const BranchWork work_prime{&branches[static_cast<std::size_t>(b)].branch_prime,
                                &trees.policy_prime};
    quadruples[static_cast<std::size_t>(b)] =
        ReturnQuadruple{original_return(setup, work, dg), original_return(setup, work_prime, dg),
                        online[static_cast<std::size_t>(b)].simplified,
                        online[static_cast<std::size_t>(b)].simplified_prime};
  }
  return quadruples;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
#ifdef _OPENMP
  if (config.threads > 0) omp_set_num_threads(config.threads);
#endif
  const ScenarioSetup setup = build_scenario(config);
  RngStream base(config.seed);
  const ParticleBelief root =
      setup.initial_belief(config.particle_count, base.child(stream_tag::kInitialBelief));
  const TreeParams params = resolved_tree_params(config);

  ExperimentResult result;
  result.config = config;

  const auto tree_start = std::chrono::steady_clock::now();
  const CoupledTrees trees = build_coupled_trees(root, setup.policy, setup.policy_prime, params,
                                                 setup.motion, setup.obs_model, base);
  const double tree_seconds = elapsed_seconds(tree_start);

  const std::vector<BranchPair> branches = enumerate_branches(trees);
  result.branch_count = static_cast<int>(branches.size());

  // Warm-up excluded from phase timings: touch one branch end to end so
  // thread pools and caches are live before the clocks start.
  {
    SimplificationSpec warm_spec{config.variant, config.simplified_counts.front(), config.seed};
    const RngStream warm_base = trees.base_stream.child({stream_tag::kSimplifiedPhase, 0});
    int dg = 0;
    const BranchWork work{&branches.front().branch, &trees.policy};
    simplified_once(trees, setup, work, warm_spec, warm_base, 0, dg);
    if (config.offline_loss) original_return(setup, work, dg);
  }

  for (int n : config.simplified_counts) {
    SimplificationRun run;
    run.simplified_count = n;
    run.timings.tree_build_s = tree_seconds;

    const SimplificationSpec spec{config.variant, n, config.seed};
    BoundSpec bound_spec;
    bound_spec.alpha = config.alpha;
    bound_spec.replicate_count = config.replicate_count;
    bound_spec.variant = config.variant;
    bound_spec.kind = config.bound_kind;
    bound_spec.paper_rounding = config.paper_rounding;

    SimplifiedPhase phase = run_simplified_phases(trees, branches, setup, spec, bound_spec);
    run.timings.simplified_s = phase.primary_seconds;
    run.timings.bounds_s = phase.bounds_seconds;

    run.online = characterize_online(phase.online, config.alpha, config.grid_step);
    run.online.degenerate_steps = phase.degenerate_steps + trees.degenerate_steps;

    if (config.offline_loss) {
      const auto original_start = std::chrono::steady_clock::now();
      const std::vector<ReturnQuadruple> quadruples =
          collect_return_quadruples(trees, branches, setup, phase.online);
      run.timings.original_s = elapsed_seconds(original_start);
      run.offline =
          characterize_offline(quadruples, run.online.delta_grid, run.online.delta_star);
      run.diagnostics = verify_bound_guarantees(quadruples, phase.online,
                                                run.online.delta_grid, config.alpha);
      const double denominator = run.timings.simplified_s + run.timings.bounds_s;
      run.speedup_observed = denominator > 0.0 ? run.timings.original_s / denominator : 0.0;
    }

    const double nn = static_cast<double>(n);
    const double big_n = static_cast<double>(config.particle_count);
    run.speedup_predicted = (big_n * big_n) / (nn * nn * config.replicate_count);
    run.timings.resolution_warning =
        run.timings.simplified_s + run.timings.bounds_s < kTimingFloorSeconds ||
        (config.offline_loss && run.timings.original_s < kTimingFloorSeconds);
    result.runs.push_back(std::move(run));
  }
  return result;
}

std::vector<SpeedupRow> speedup_probe(const ExperimentConfig& config) {
  ExperimentConfig probe = config;
  probe.offline_loss = true;
  const ExperimentResult result = run_experiment(probe);
  std::vector<SpeedupRow> rows;
  rows.reserve(result.runs.size());
  for (const SimplificationRun& run : result.runs)
    rows.push_back(SpeedupRow{run.simplified_count, run.speedup_predicted, run.speedup_observed,
                              run.timings.resolution_warning});
  return rows;
}

}  // namespace pacon
