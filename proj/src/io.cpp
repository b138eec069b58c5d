#include "pacon/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "pacon/experiment.hpp"

namespace pacon {

namespace {

using nlohmann::json;

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // fixed newlines on every platform
  if (!out) throw std::runtime_error("cannot write output file " + path.string());
  return out;
}

json state_json(const StateVec& s, int dim) {
  json arr = json::array();
  for (int d = 0; d < dim; ++d) arr.push_back(s[d]);
  return arr;
}

json node_json(const BranchNode& node, int dim) {
  json out;
  out["depth"] = node.depth;
  out["observation"] = state_json(node.observation, dim);
  out["ground_truth"] = state_json(node.ground_truth, dim);
  out["parent_realization"] = node.parent_realization;
  out["observation_slot"] = node.observation_slot;
  json children = json::array();
  for (const auto& child : node.children) children.push_back(node_json(*child, dim));
  out["children"] = std::move(children);
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<HistogramBin> make_histogram(std::span<const double> samples, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
  if (samples.empty()) return {};
  const double max_sample = *std::max_element(samples.begin(), samples.end());
  const int bins = std::max(1, static_cast<int>(std::floor(max_sample / bin_width)) + 1);
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) out[static_cast<std::size_t>(b)].left = b * bin_width;
  for (double v : samples) {
    int b = static_cast<int>(std::floor(v / bin_width));
    b = std::clamp(b, 0, bins - 1);
    ++out[static_cast<std::size_t>(b)].count;
  }
  return out;
}

std::string tree_dump_text(const CoupledTrees& trees) {
  const int dim = trees.root.dim();
  json doc;
  json roots = json::array();
  for (const StateVec& s : trees.root_states) roots.push_back(state_json(s, dim));
  doc["root_states"] = std::move(roots);
  json actions = json::array();
  for (const StateVec& a : trees.policy.actions) actions.push_back(state_json(a, dim));
  doc["actions"] = std::move(actions);
  json actions_prime = json::array();
  for (const StateVec& a : trees.policy_prime.actions)
    actions_prime.push_back(state_json(a, dim));
  doc["actions_prime"] = std::move(actions_prime);

  json tree = json::array();
  for (const auto& node : trees.tree) tree.push_back(node_json(*node, dim));
  doc["tree"] = std::move(tree);
  json tree_prime = json::array();
  for (const auto& node : trees.tree_prime) tree_prime.push_back(node_json(*node, dim));
  doc["tree_prime"] = std::move(tree_prime);
  return doc.dump(2);
}

void write_outputs(const ExperimentResult& result, const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  fs::create_directories(dir);

  {
    std::ofstream out = open_output(dir / "tdf.csv");
    out << "# pacon tdf v1\n";
    out << "n,delta,pbloss_tdf,beta,ploss_tdf\n";
    for (const SimplificationRun& run : result.runs) {
      for (std::size_t k = 0; k < run.online.delta_grid.size(); ++k) {
        out << run.simplified_count << ',' << format_double(run.online.delta_grid[k]) << ','
            << format_double(run.online.bound_loss_tdf[k]) << ','
            << format_double(run.online.beta[k]) << ',';
        if (run.offline) out << format_double(run.offline->loss_tdf[k]);
        out << '\n';
      }
    }
  }

  {
    std::ofstream out = open_output(dir / "summary.csv");
    out << "# pacon summary v1\n";
    out << "n,branches,delta_star,beta_zero,beta_half_delta_star,beta_delta_star,"
           "pbloss_tdf_zero,lambda_hat,ploss_tdf_zero,ploss_tdf_half_delta_star,"
           "ploss_tdf_delta_star,degenerate_steps\n";
    for (const SimplificationRun& run : result.runs) {
      out << run.simplified_count << ',' << result.branch_count << ','
          << format_double(run.online.delta_star) << ','
          << format_double(run.online.beta_at_zero) << ','
          << format_double(run.online.beta_at_half_delta_star) << ','
          << format_double(run.online.beta_at_delta_star) << ','
          << format_double(empirical_tdf_at(run.online.bound_loss_samples, 0.0)) << ',';
      if (run.diagnostics) out << format_double(run.diagnostics->lambda_hat);
      out << ',';
      if (run.offline) {
        out << format_double(run.offline->loss_tdf_at_zero) << ','
            << format_double(run.offline->loss_tdf_at_half_delta_star) << ','
            << format_double(run.offline->loss_tdf_at_delta_star);
      } else {
        out << ",,";
      }
      out << ',' << run.online.degenerate_steps << '\n';
    }
  }

  {
    std::ofstream out = open_output(dir / "hist_bound_loss.csv");
    out << "# pacon histogram v1\n";
    out << "n,bin_left,count\n";
    for (const SimplificationRun& run : result.runs)
      for (const HistogramBin& bin :
           make_histogram(run.online.bound_loss_samples, result.config.hist_bin_width))
        out << run.simplified_count << ',' << format_double(bin.left) << ',' << bin.count << '\n';
  }

  {
    std::ofstream out = open_output(dir / "hist_loss.csv");
    out << "# pacon histogram v1\n";
    out << "n,bin_left,count\n";
    for (const SimplificationRun& run : result.runs) {
      if (!run.offline) continue;
      for (const HistogramBin& bin :
           make_histogram(run.offline->loss_samples, result.config.hist_bin_width))
        out << run.simplified_count << ',' << format_double(bin.left) << ',' << bin.count << '\n';
    }
  }

  {
    std::ofstream out = open_output(dir / "timings.csv");
    out << "# pacon timings v1\n";
    out << "n,seconds_tree_build,seconds_original_returns,seconds_simplified_returns,"
           "seconds_bound_replicates,speedup_observed,speedup_predicted,resolution_warning\n";
    for (const SimplificationRun& run : result.runs) {
      out << run.simplified_count << ',' << format_double(run.timings.tree_build_s) << ','
          << format_double(run.timings.original_s) << ','
          << format_double(run.timings.simplified_s) << ','
          << format_double(run.timings.bounds_s) << ','
          << format_double(run.speedup_observed) << ','
          << format_double(run.speedup_predicted) << ','
          << (run.timings.resolution_warning ? 1 : 0) << '\n';
    }
  }
}

}  // namespace pacon
