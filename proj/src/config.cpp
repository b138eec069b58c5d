#include "pacon/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pacon/tree.hpp"

namespace pacon {

namespace {

using nlohmann::json;

StateVec parse_state(const json& value, const std::string& key) {
  if (!value.is_array() || value.empty() || value.size() > kMaxStateDim)
    throw ConfigError(key + ": expected an array of 1 or 2 numbers");
  StateVec out{0.0, 0.0};
  for (std::size_t d = 0; d < value.size(); ++d) {
    if (!value[d].is_number()) throw ConfigError(key + ": expected numeric components");
    out[d] = value[d].get<double>();
  }
  return out;
}

std::vector<StateVec> parse_states(const json& value, const std::string& key) {
  if (!value.is_array()) throw ConfigError(key + ": expected an array");
  std::vector<StateVec> out;
  out.reserve(value.size());
  for (const json& item : value) out.push_back(parse_state(item, key));
  return out;
}

int scenario_dim(ScenarioKind kind) { return kind == ScenarioKind::kToy ? 1 : 2; }

// Default open-loop sequences: the main policy drives right then up, the
// alternative swaps the order. The toy dives at two different rates.
void default_actions(const ExperimentConfig& config, std::vector<StateVec>& actions,
                     std::vector<StateVec>& actions_prime) {
  const int horizon = config.horizon;
  actions.clear();
  actions_prime.clear();
  if (config.scenario == ScenarioKind::kToy) {
    actions.assign(static_cast<std::size_t>(horizon), make_state(1.0));
    actions_prime.assign(static_cast<std::size_t>(horizon), make_state(0.5));
    return;
  }
  const int first_leg = (horizon + 1) / 2;
  for (int i = 0; i < horizon; ++i) {
    actions.push_back(i < first_leg ? make_state(1.0, 0.0) : make_state(0.0, 1.0));
    actions_prime.push_back(i < first_leg ? make_state(0.0, 1.0) : make_state(1.0, 0.0));
  }
}

// Spacing-2 integer lattice covering both L-shaped trajectories; the sparse
// spacing leaves regions more than one unit from any beacon so the clamped
// noise actually saturates. Scenario 2 drops the beacon closest to the
// alternative policy's first leg.
std::vector<StateVec> default_beacons(const ExperimentConfig& config,
                                      const std::vector<StateVec>& actions) {
  if (config.scenario == ScenarioKind::kToy) return {make_state(-1000.0)};
  double reach = 1.0;
  StateVec position{0.5, 0.5};
  for (const StateVec& a : actions) {
    position[0] += a[0];
    position[1] += a[1];
    reach = std::max({reach, position[0], position[1]});
  }
  int top = static_cast<int>(std::ceil(reach + 1.0));
  if (top % 2 != 0) ++top;

  std::vector<StateVec> beacons;
  for (int x = 0; x <= top; x += 2)
    for (int y = 0; y <= top; y += 2) beacons.push_back(make_state(x, y));

  if (config.scenario == ScenarioKind::kBeacon2) {
    const int first_leg = (config.horizon + 1) / 2;
    const StateVec leg_mid = make_state(0.5, 0.5 + 0.5 * first_leg);
    std::size_t nearest = 0;
    double best = squared_distance(beacons[0], leg_mid, 2);
    for (std::size_t i = 1; i < beacons.size(); ++i) {
      const double sq = squared_distance(beacons[i], leg_mid, 2);
      if (sq < best) {
        best = sq;
        nearest = i;
      }
    }
    beacons.erase(beacons.begin() + static_cast<std::ptrdiff_t>(nearest));
  }
  return beacons;
}

}  // namespace

std::string scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kBeacon1: return "beacon-1";
    case ScenarioKind::kBeacon2: return "beacon-2";
    case ScenarioKind::kToy: return "toy";
  }
  throw std::logic_error("unknown scenario");
}

ScenarioKind parse_scenario(const std::string& name) {
  if (name == "beacon-1") return ScenarioKind::kBeacon1;
  if (name == "beacon-2") return ScenarioKind::kBeacon2;
  if (name == "toy") return ScenarioKind::kToy;
  throw ConfigError("unknown scenario '" + name + "' (expected beacon-1, beacon-2 or toy)");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config is not valid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "scenario",       "seed",           "particle_count",  "simplified_count",
      "simplified_counts", "replicates",  "horizon",         "alpha",
      "root_observations", "dwindle",     "belief_realizations", "branch_cap",
      "variant",        "bound_kind",     "paper_rounding",  "offline_loss",
      "process_noise",  "initial_square", "beacons",         "actions",
      "actions_prime",  "grid_step",      "hist_bin_width",  "output_dir",
      "threads"};
  for (const auto& [key, value] : doc.items())
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");

  ExperimentConfig config;
  if (doc.contains("scenario")) config.scenario = parse_scenario(doc["scenario"].get<std::string>());
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("particle_count")) config.particle_count = doc["particle_count"].get<int>();
  if (doc.contains("simplified_count"))
    config.simplified_counts = {doc["simplified_count"].get<int>()};
  if (doc.contains("simplified_counts"))
    config.simplified_counts = doc["simplified_counts"].get<std::vector<int>>();
  if (doc.contains("replicates")) config.replicate_count = doc["replicates"].get<int>();
  if (doc.contains("horizon")) config.horizon = doc["horizon"].get<int>();
  if (doc.contains("alpha")) config.alpha = doc["alpha"].get<double>();
  if (doc.contains("root_observations"))
    config.root_observations = doc["root_observations"].get<int>();
  if (doc.contains("dwindle")) config.dwindle = doc["dwindle"].get<double>();
  if (doc.contains("belief_realizations"))
    config.belief_realizations = doc["belief_realizations"].get<int>();
  if (doc.contains("branch_cap")) config.branch_cap = doc["branch_cap"].get<std::int64_t>();
  if (doc.contains("variant")) {
    const std::string v = doc["variant"].get<std::string>();
    if (v == "a")
      config.variant = SimplificationVariant::kRootFixedSeed;
    else if (v == "b")
      config.variant = SimplificationVariant::kPerLevel;
    else
      throw ConfigError("variant must be \"a\" or \"b\"");
  }
  if (doc.contains("bound_kind")) {
    const std::string v = doc["bound_kind"].get<std::string>();
    if (v == "clt")
      config.bound_kind = BoundKind::kClt;
    else if (v == "minmax")
      config.bound_kind = BoundKind::kMinMax;
    else
      throw ConfigError("bound_kind must be \"clt\" or \"minmax\"");
  }
  if (doc.contains("paper_rounding")) config.paper_rounding = doc["paper_rounding"].get<bool>();
  if (doc.contains("offline_loss")) config.offline_loss = doc["offline_loss"].get<bool>();
  if (doc.contains("process_noise")) config.process_noise = doc["process_noise"].get<double>();
  if (doc.contains("initial_square")) {
    const json& square = doc["initial_square"];
    if (!square.is_array() || square.size() != 2)
      throw ConfigError("initial_square must be [[lows...], [highs...]]");
    config.initial_low = square[0].get<std::vector<double>>();
    config.initial_high = square[1].get<std::vector<double>>();
  }
  if (doc.contains("beacons")) config.beacons = parse_states(doc["beacons"], "beacons");
  if (doc.contains("actions")) config.actions = parse_states(doc["actions"], "actions");
  if (doc.contains("actions_prime"))
    config.actions_prime = parse_states(doc["actions_prime"], "actions_prime");
  if (doc.contains("grid_step")) config.grid_step = doc["grid_step"].get<double>();
  if (doc.contains("hist_bin_width")) config.hist_bin_width = doc["hist_bin_width"].get<double>();
  if (doc.contains("output_dir")) config.output_dir = doc["output_dir"].get<std::string>();
  if (doc.contains("threads")) config.threads = doc["threads"].get<int>();

  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string ExperimentConfig::to_json_text() const {
  json doc;
  doc["scenario"] = scenario_name(scenario);
  doc["seed"] = seed;
  doc["particle_count"] = particle_count;
  doc["simplified_counts"] = simplified_counts;
  doc["replicates"] = replicate_count;
  doc["horizon"] = horizon;
  doc["alpha"] = alpha;
  doc["root_observations"] = root_observations;
  doc["dwindle"] = dwindle;
  doc["belief_realizations"] = belief_realizations;
  doc["branch_cap"] = branch_cap;
  doc["variant"] = variant == SimplificationVariant::kRootFixedSeed ? "a" : "b";
  doc["bound_kind"] = bound_kind == BoundKind::kClt ? "clt" : "minmax";
  doc["paper_rounding"] = paper_rounding;
  doc["offline_loss"] = offline_loss;
  doc["process_noise"] = process_noise;
  doc["grid_step"] = grid_step;
  doc["hist_bin_width"] = hist_bin_width;
  doc["output_dir"] = output_dir;
  doc["threads"] = threads;
  return doc.dump(2);
}

void ExperimentConfig::validate() const {
  if (particle_count < 1) throw ConfigError("particle_count must be positive");
  if (simplified_counts.empty()) throw ConfigError("need at least one simplified count");
  for (int n : simplified_counts)
    if (n < 1 || n > particle_count)
      throw ConfigError("simplified counts must be in [1, particle_count]");
  if (replicate_count < 1) throw ConfigError("replicates must be positive");
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in [0, 1)");
  if (root_observations < 0) throw ConfigError("root_observations must be nonnegative");
  if (dwindle < 0.0) throw ConfigError("dwindle must be nonnegative");
  if (belief_realizations < 1) throw ConfigError("belief_realizations must be positive");
  if (branch_cap < 0) throw ConfigError("branch_cap must be nonnegative");
  if (!(process_noise > 0.0)) throw ConfigError("process_noise must be positive");
  if (!(grid_step > 0.0)) throw ConfigError("grid_step must be positive");
  if (!(hist_bin_width > 0.0)) throw ConfigError("hist_bin_width must be positive");
  if (threads < 0) throw ConfigError("threads must be nonnegative");
  if (bound_kind == BoundKind::kMinMax && scenario != ScenarioKind::kToy)
    throw ConfigError("minmax bounds are only defined for the 1-D toy scenario");
  const int dim = scenario_dim(scenario);
  if (!initial_low.empty() &&
      (initial_low.size() != static_cast<std::size_t>(dim) ||
       initial_high.size() != static_cast<std::size_t>(dim)))
    throw ConfigError("initial_square bounds must match the scenario dimension");
  for (std::size_t d = 0; d < initial_low.size(); ++d)
    if (!(initial_low[d] < initial_high[d]))
      throw ConfigError("initial_square lower bounds must be below upper bounds");
  if (!actions.empty() && static_cast<int>(actions.size()) != horizon)
    throw ConfigError("actions must have exactly `horizon` entries");
  if (!actions_prime.empty() && static_cast<int>(actions_prime.size()) != horizon)
    throw ConfigError("actions_prime must have exactly `horizon` entries");
}

RewardModel ScenarioSetup::reward_model() const {
  RewardModel model;
  model.kind = reward_kind;
  model.motion = &motion;
  model.observation = &obs_model;
  return model;
}

ParticleBelief ScenarioSetup::initial_belief(int particle_count, RngStream rng) const {
  std::vector<StateVec> states(static_cast<std::size_t>(particle_count));
  for (StateVec& s : states) {
    s = StateVec{0.0, 0.0};
    for (int d = 0; d < dim; ++d)
      s[d] = initial_low[static_cast<std::size_t>(d)] +
             rng.uniform() * (initial_high[static_cast<std::size_t>(d)] -
                              initial_low[static_cast<std::size_t>(d)]);
  }
  return ParticleBelief::equal_weights(dim, std::move(states), 0);
}

ScenarioSetup build_scenario(const ExperimentConfig& config) {
  config.validate();
  ScenarioSetup setup;
  setup.dim = scenario_dim(config.scenario);

  setup.policy.actions = config.actions;
  setup.policy_prime.actions = config.actions_prime;
  if (setup.policy.actions.empty() || setup.policy_prime.actions.empty()) {
    std::vector<StateVec> main_actions;
    std::vector<StateVec> alt_actions;
    default_actions(config, main_actions, alt_actions);
    if (setup.policy.actions.empty()) setup.policy.actions = std::move(main_actions);
    if (setup.policy_prime.actions.empty()) setup.policy_prime.actions = std::move(alt_actions);
  }

  setup.motion = TransitionModel{setup.dim, config.process_noise};
  setup.obs_model.dim = setup.dim;
  setup.obs_model.noise_scale = config.process_noise;
  setup.obs_model.clamped = config.scenario != ScenarioKind::kBeacon2;
  setup.obs_model.beacons =
      config.beacons.empty() ? default_beacons(config, setup.policy.actions) : config.beacons;

  setup.reward_kind = config.scenario == ScenarioKind::kToy ? RewardKind::kSampleMean
                                                            : RewardKind::kNegDifferentialEntropy;
  if (config.initial_low.empty()) {
    setup.initial_low.assign(static_cast<std::size_t>(setup.dim), 0.0);
    setup.initial_high.assign(static_cast<std::size_t>(setup.dim), 1.0);
  } else {
    setup.initial_low = config.initial_low;
    setup.initial_high = config.initial_high;
  }
  return setup;
}

}  // namespace pacon
