#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pacon/experiment.hpp"
#include "pacon/io.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string scenario;
  std::string n_list;
  double alpha = -1.0;
  std::int64_t seed = -1;
  bool paper_rounding = false;
  bool offline_loss = false;
  std::string out_dir;
  int threads = -1;
  std::string tree_dump;
};

void add_common_options(CLI::App* cmd, CliOverrides& opts) {
  cmd->add_option("--config", opts.config_path, "JSON experiment config")->required();
  cmd->add_option("--scenario", opts.scenario, "beacon-1, beacon-2 or toy");
  cmd->add_option("--n-list", opts.n_list, "comma-separated simplified particle counts");
  cmd->add_option("--alpha", opts.alpha, "bound miss probability in [0, 1)");
  cmd->add_option("--seed", opts.seed, "root RNG seed");
  cmd->add_flag("--paper-rounding", opts.paper_rounding,
                "use the rounded normal quantile (2.56) from the reference tables");
  cmd->add_flag("--offline-ploss", opts.offline_loss,
                "also compute original returns and the offline loss distribution");
  cmd->add_option("--out", opts.out_dir, "output directory for CSV files");
  cmd->add_option("--threads", opts.threads, "worker thread count (0 = hardware)");
  cmd->add_option("--tree-dump", opts.tree_dump,
                  "write the built observation trees to this JSON file");
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stoi(token));
  }
  if (out.empty()) throw pacon::ConfigError("--n-list must contain at least one count");
  return out;
}

pacon::ExperimentConfig resolve_config(const CliOverrides& opts) {
  pacon::ExperimentConfig config = pacon::ExperimentConfig::load(opts.config_path);
  if (!opts.scenario.empty()) config.scenario = pacon::parse_scenario(opts.scenario);
  if (!opts.n_list.empty()) config.simplified_counts = parse_n_list(opts.n_list);
  if (opts.alpha >= 0.0) config.alpha = opts.alpha;
  if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.paper_rounding) config.paper_rounding = true;
  if (opts.offline_loss) config.offline_loss = true;
  if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
  if (opts.threads >= 0) config.threads = opts.threads;
  config.validate();
  return config;
}

void maybe_dump_trees(const pacon::ExperimentConfig& config, const std::string& path) {
  if (path.empty()) return;
  const pacon::ScenarioSetup setup = pacon::build_scenario(config);
  pacon::RngStream base(config.seed);
  const pacon::ParticleBelief root = setup.initial_belief(
      config.particle_count, base.child(pacon::stream_tag::kInitialBelief));
  const pacon::CoupledTrees trees =
      pacon::build_coupled_trees(root, setup.policy, setup.policy_prime,
                                 pacon::resolved_tree_params(config), setup.motion,
                                 setup.obs_model, base);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write tree dump to " + path);
  out << pacon::tree_dump_text(trees) << '\n';
}

int run_command(const CliOverrides& opts) {
  const pacon::ExperimentConfig config = resolve_config(opts);
  maybe_dump_trees(config, opts.tree_dump);
  const pacon::ExperimentResult result = pacon::run_experiment(config);
  pacon::write_outputs(result, config.output_dir);

  for (const pacon::SimplificationRun& run : result.runs) {
    std::cout << "n=" << run.simplified_count << " branches=" << result.branch_count
              << " delta_star=" << pacon::format_double(run.online.delta_star)
              << " beta(0)=" << pacon::format_double(run.online.beta_at_zero)
              << " beta(delta_star)=" << pacon::format_double(run.online.beta_at_delta_star);
    if (run.diagnostics)
      std::cout << " lambda_hat=" << pacon::format_double(run.diagnostics->lambda_hat);
    std::cout << '\n';
    if (run.online.degenerate_steps > 0)
      std::cerr << "warning: " << run.online.degenerate_steps
                << " degenerate filter/reward steps at n=" << run.simplified_count << '\n';
    if (run.timings.resolution_warning)
      std::cerr << "warning: phase under 10 ms at n=" << run.simplified_count
                << "; timing ratios unreliable\n";
  }
  std::cout << "outputs written to " << config.output_dir << '\n';
  return 0;
}

int speedup_command(const CliOverrides& opts) {
  const pacon::ExperimentConfig config = resolve_config(opts);
  const std::vector<pacon::SpeedupRow> rows = pacon::speedup_probe(config);
  std::cout << "n,predicted,observed\n";
  for (const pacon::SpeedupRow& row : rows) {
    std::cout << row.simplified_count << ',' << pacon::format_double(row.predicted) << ','
              << pacon::format_double(row.observed) << '\n';
    if (row.resolution_warning)
      std::cerr << "warning: phase under 10 ms at n=" << row.simplified_count
                << "; ratio unreliable\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief-space simplification characterization experiments"};
  app.require_subcommand(1);

  CliOverrides run_opts;
  CLI::App* run = app.add_subcommand("run", "run an experiment and write CSV outputs");
  add_common_options(run, run_opts);

  CliOverrides speedup_opts;
  CLI::App* speedup =
      app.add_subcommand("speedup", "measure observed vs predicted return-phase speedup");
  add_common_options(speedup, speedup_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(run_opts);
    if (speedup->parsed()) return speedup_command(speedup_opts);
  } catch (const pacon::ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
