#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pacon/config.hpp"
#include "pacon/loss.hpp"
#include "pacon/tree.hpp"

namespace pacon {

struct PhaseTimings {
  double tree_build_s = 0.0;
  double original_s = 0.0;    // measured only when the offline pass runs
  double simplified_s = 0.0;  // primary simplified returns
  double bounds_s = 0.0;      // remaining replicates plus interval assembly
  /// Any measured phase below 10 ms, where the wall clock stops resolving
  /// meaningful ratios.
  bool resolution_warning = false;
};

/// Everything produced for one simplified particle count.
struct SimplificationRun {
  int simplified_count = 0;
  CharacterizationReport online;
  std::optional<OfflineCharacterization> offline;
  std::optional<BoundDiagnostics> diagnostics;
  PhaseTimings timings;
  double speedup_predicted = 0.0;  // N^2 / (n^2 m)
  double speedup_observed = 0.0;   // 0 when the offline pass did not run
};

struct ExperimentResult {
  ExperimentConfig config;
  int branch_count = 0;
  std::vector<SimplificationRun> runs;  // one per simplified count
};

/// Build the coupled trees, run the online characterization (and optionally
/// the offline loss pass) for every configured simplified count.
/// Deterministic given the seed, for any thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Observation schedule and caps with config defaults filled in.
TreeParams resolved_tree_params(const ExperimentConfig& config);

/// Per-branch online samples for one simplified count. The collection side
/// of the online characterization, exposed for tests and bindings.
std::vector<OnlineSample> collect_online_samples(const CoupledTrees& trees,
                                                 const std::vector<BranchPair>& branches,
                                                 const ScenarioSetup& setup,
                                                 const SimplificationSpec& spec,
                                                 const BoundSpec& bound_spec);

/// Paired original returns for the same branches (offline path).
std::vector<ReturnQuadruple> collect_return_quadruples(
    const CoupledTrees& trees, const std::vector<BranchPair>& branches,
    const ScenarioSetup& setup, const std::vector<OnlineSample>& online);

/// Write tdf.csv, summary.csv, hist_loss.csv, hist_bound_loss.csv and
/// timings.csv into the directory (created if missing).
void write_outputs(const ExperimentResult& result, const std::string& directory);

/// Observed-versus-predicted speedup per simplified count (forces the
/// offline pass so the original-return phase is measured).
struct SpeedupRow {
  int simplified_count = 0;
  double predicted = 0.0;
  double observed = 0.0;
  bool resolution_warning = false;
};

std::vector<SpeedupRow> speedup_probe(const ExperimentConfig& config);

}  // namespace pacon
