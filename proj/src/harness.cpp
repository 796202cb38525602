// Copyright 2026 The SNC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "snc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "snc/channel.hpp"
#include "snc/dialogue.hpp"
#include "snc/system1.hpp"

namespace snc {

namespace {

using nlohmann::json;

constexpr std::uint64_t kWorldKey = 0x776f726c64;
constexpr std::uint64_t kTrialKey = 0x747269616c;
constexpr std::uint64_t kChannelKey = 0x6368616e;
constexpr std::uint64_t kPerturbKey = 0x70657274;
constexpr const char* kVersion = "1.0.0";

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += threads) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string update_name(ContextUpdate u) {
  return u == ContextUpdate::kJoint ? "joint" : "anchored";
}

const AgentProfile& speaker_of(const WorldInstance& w) { return w.agent(0); }
const AgentProfile& listener_of(const WorldInstance& w) {
  return w.agents.size() > 1 ? w.agent(1) : w.agent(0);
}

DialogueConfig dialogue_config(const ExperimentConfig& cfg, std::pair<double, double> ab,
                               int depth, int rounds) {
  DialogueConfig d;
  d.k_max = rounds;
  d.stop_confidence = cfg.stop_confidence;
  d.reasoning.alpha = ab.first;
  d.reasoning.beta = ab.second;
  d.reasoning.lambda = cfg.lambda;
  d.reasoning.max_depth = depth;
  d.reasoning.update = cfg.update;
  d.reasoning.record_trace = false;
  return d;
}

// Every dialogue-based grid cell: (alpha, beta) x depth x rounds.
struct GridCell {
  std::pair<double, double> ab;
  int depth;
  int rounds;
};

std::vector<GridCell> dialogue_grid(const ExperimentConfig& cfg) {
  std::vector<GridCell> out;
  for (const auto& ab : cfg.rationality_pairs()) {
    for (int r : cfg.depths) {
      for (int k : cfg.rounds) out.push_back({ab, r, k});
    }
  }
  return out;
}

struct TrialOutcome {
  bool success = false;
  int rounds_used = 0;
  double s1_bits = 0.0;
  bool s1_fallback = false;
  double s2_bits = 0.0;
  double g_final = 0.0;
  bool monotone = true;
  int bound_violations = 0;
  int single_support_rounds = 0;
  std::vector<std::uint64_t> s1_uses;
  std::vector<std::uint64_t> s2_uses;
};

void score_report(const DialogueReport& rep, TrialOutcome& t) {
  t.success = rep.success;
  t.rounds_used = static_cast<int>(rep.rounds.size());
  t.s2_bits = static_cast<double>(rep.total_bits());
  t.g_final = rep.rounds.empty() ? 0.0 : rep.rounds.back().g_final;
  t.monotone = check_theorem3(rep);
  for (const RoundRecord& r : rep.rounds) {
    if (r.single_support) {
      ++t.single_support_rounds;
      continue;
    }
    if (r.huffman_expected_bits < r.bounds.lower - 1e-9 ||
        r.huffman_expected_bits > r.bounds.upper + 1e-9) {
      ++t.bound_violations;
    }
  }
}

CellResult reduce(const std::vector<TrialOutcome>& trials, CellResult base,
                  std::size_t channel_index, bool with_channel) {
  base.trials = static_cast<int>(trials.size());
  double rounds = 0, s1 = 0, s2 = 0, s1u = 0, s2u = 0, g = 0, fb = 0;
  for (const TrialOutcome& t : trials) {
    base.successes += t.success ? 1 : 0;
    rounds += t.rounds_used;
    s1 += t.s1_bits;
    s2 += t.s2_bits;
    g += t.g_final;
    fb += t.s1_fallback ? 1.0 : 0.0;
    base.posterior_drops += t.monotone ? 0 : 1;
    base.bound_violations += t.bound_violations;
    base.single_support_rounds += t.single_support_rounds;
    if (with_channel) {
      s1u += static_cast<double>(t.s1_uses[channel_index]);
      s2u += static_cast<double>(t.s2_uses[channel_index]);
    }
  }
  const double n = static_cast<double>(trials.size());
  base.gamma = static_cast<double>(base.successes) / n;
  base.mean_rounds_used = rounds / n;
  base.s1_bits = s1 / n;
  base.s2_bits = s2 / n;
  base.s1_channel_uses = with_channel ? s1u / n : base.s1_bits;
  base.s2_channel_uses = with_channel ? s2u / n : base.s2_bits;
  base.mean_g_final = g / n;
  base.s1_fallback_rate = fb / n;
  return base;
}

WorldInstance trial_world(const ExperimentConfig& cfg, const WorldInstance& fixed, int trial) {
  if (!cfg.world.resample_per_trial) return fixed;
  Rng rng = Rng::stream(derive_seed(cfg.seed, kWorldKey), static_cast<std::uint64_t>(trial));
  return gen_world(cfg.world.num_actions, cfg.world.num_concepts, cfg.world.beta, rng);
}

// Shared body of the reliability and SR-length experiments.
ExperimentResult run_dialogue_experiment(const ExperimentConfig& cfg, bool with_channel) {
  cfg.validate();
  const WorldInstance world = experiment_world(cfg);
  const std::vector<GridCell> grid = dialogue_grid(cfg);
  ExperimentResult result{cfg, {}};
  const std::string experiment = with_channel ? "srlength" : "reliability";

  for (std::size_t cell = 0; cell < grid.size(); ++cell) {
    const GridCell& g = grid[cell];
    const DialogueConfig dcfg = dialogue_config(cfg, g.ab, g.depth, g.rounds);
    DialogueCache cache;
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
    const std::uint64_t cell_seed = derive_seed(cfg.seed, kTrialKey + cell);

    parallel_for(cfg.trials, cfg.threads, [&](int trial) {
      const WorldInstance w = trial_world(cfg, world, trial);
      Rng rng = Rng::stream(cell_seed, static_cast<std::uint64_t>(trial));
      const ActionId intended{static_cast<std::size_t>(sample(w.world.prior_actions, rng))};
      const DialogueReport rep =
          run_dialogue(speaker_of(w), listener_of(w), w.world, intended, dcfg,
                       cfg.world.resample_per_trial ? nullptr : &cache);
      TrialOutcome& t = outcomes[static_cast<std::size_t>(trial)];
      score_report(rep, t);

      const Codebook s1_code = s1_codebook(speaker_of(w), w.world.prior_actions, w.world.symbols);
      const Extraction ex =
          extract_with_policy(speaker_of(w), intended, cfg.threshold, EmptyExtraction::kArgmax);
      std::uint64_t s1_bits = 0;
      for (ConceptId c : ex.concepts) s1_bits += s1_code.length(w.world.symbols.symbol(c));
      t.s1_bits = static_cast<double>(s1_bits);
      t.s1_fallback = ex.fell_back;

      if (with_channel) {
        for (std::size_t j = 0; j < cfg.erasure_probs.size(); ++j) {
          Rng ch = Rng::stream(derive_seed(rng.next_u64(), kChannelKey), j);
          const ChannelSpec spec{cfg.erasure_probs[j]};
          t.s1_uses.push_back(transmit_count(s1_bits, spec, ch).total_channel_uses);
          t.s2_uses.push_back(transmit_count(rep.total_bits(), spec, ch).total_channel_uses);
        }
      }
    });

    CellResult base;
    base.experiment = experiment;
    base.alpha = g.ab.first;
    base.beta = g.ab.second;
    base.lambda = cfg.lambda;
    base.depth = g.depth;
    base.rounds = g.rounds;
    base.init = "shared";
    if (with_channel) {
      for (std::size_t j = 0; j < cfg.erasure_probs.size(); ++j) {
        CellResult c = base;
        c.erasure_prob = cfg.erasure_probs[j];
        result.cells.push_back(reduce(outcomes, c, j, true));
      }
    } else {
      result.cells.push_back(reduce(outcomes, base, 0, false));
    }
  }
  return result;
}

template <typename T>
json vec(const std::vector<T>& v) {
  return json(v);
}

template <typename T>
std::vector<T> read_list(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) {
    throw Error(Errc::kInvalidConfig, "'" + key + "' must be a nonempty array");
  }
  std::vector<T> out;
  for (const json& x : v) {
    if constexpr (std::is_integral_v<T>) {
      if (!x.is_number_integer()) throw Error(Errc::kInvalidConfig, "'" + key + "' entries must be integers");
    } else {
      if (!x.is_number()) throw Error(Errc::kInvalidConfig, "'" + key + "' entries must be numbers");
    }
    out.push_back(x.get<T>());
  }
  return out;
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!known.contains(item.key())) {
      throw Error(Errc::kInvalidConfig, "unknown key '" + where + item.key() + "'");
    }
  }
}

double read_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw Error(Errc::kInvalidConfig, "'" + key + "' must be a number");
  return v.get<double>();
}

long long read_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw Error(Errc::kInvalidConfig, "'" + key + "' must be an integer");
  return v.get<long long>();
}

bool read_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw Error(Errc::kInvalidConfig, "'" + key + "' must be true or false");
  return v.get<bool>();
}

std::string read_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw Error(Errc::kInvalidConfig, "'" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::kInvalidConfig, m); };
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) fail("name must be a plain file stem");
  if (world.file.empty()) {
    if (world.num_actions < 1 || world.num_concepts < 1) fail("world dimensions must be positive");
    if (!(world.beta.a > 0.0 && world.beta.b > 0.0)) fail("world beta parameters must be positive");
  } else if (world.resample_per_trial) {
    fail("resample_per_trial needs a generated world");
  }
  if (alphas.empty() || (!tied && betas.empty())) fail("rationality grid is empty");
  if (tied && betas != alphas) fail("tied grids take their betas from alphas");
  if (depths.empty() || rounds.empty()) fail("depths and rounds must be nonempty");
  if (trials < 1) fail("trials must be at least 1");
  if (threads < 1) fail("threads must be at least 1");
  for (int r : depths) {
    if (r < 1) fail("depths must be at least 1");
  }
  for (int k : rounds) {
    if (k < 1) fail("rounds must be at least 1");
  }
  if (erasure_probs.empty()) fail("erasure_probs must be nonempty");
  for (double pe : erasure_probs) {
    if (!(pe >= 0.0 && pe < 1.0)) fail("erasure probabilities must lie in [0, 1)");
  }
  if (epsilons.empty()) fail("epsilons must be nonempty");
  for (double e : epsilons) {
    if (!(e >= 0.0)) fail("epsilons must be nonnegative");
  }
  if (!(quantize_step > 0.0 && quantize_step <= 1.0)) fail("quantize_step must lie in (0, 1]");
  if (!(threshold > 0.0 && threshold <= 1.0)) fail("threshold must lie in (0, 1]");
  for (const auto& [a, b] : rationality_pairs()) {
    ReasoningParams p;
    p.alpha = a;
    p.beta = b;
    p.lambda = lambda;
    try {
      p.validate();
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (!(stop_confidence >= 0.0 && stop_confidence < 1.0)) fail("stop_confidence must lie in [0, 1)");
}

std::vector<std::pair<double, double>> ExperimentConfig::rationality_pairs() const {
  std::vector<std::pair<double, double>> out;
  if (tied) {
    for (double a : alphas) out.emplace_back(a, a);
  } else {
    for (double a : alphas) {
      for (double b : betas) out.emplace_back(a, b);
    }
  }
  return out;
}

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kReliability:
      return "reliability";
    case ExperimentKind::kSrLength:
      return "srlength";
    case ExperimentKind::kPerturbation:
      return "perturbation";
  }
  return "reliability";
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json w;
  w["num_actions"] = cfg.world.num_actions;
  w["num_concepts"] = cfg.world.num_concepts;
  w["beta"] = {cfg.world.beta.a, cfg.world.beta.b};
  w["file"] = cfg.world.file;
  w["resample_per_trial"] = cfg.world.resample_per_trial;
  json doc;
  doc["name"] = cfg.name;
  doc["experiment"] = kind_name(cfg.kind);
  doc["seed"] = cfg.seed;
  doc["world"] = w;
  doc["alphas"] = vec(cfg.alphas);
  doc["betas"] = vec(cfg.betas);
  doc["tied"] = cfg.tied;
  doc["lambda"] = cfg.lambda;
  doc["depths"] = vec(cfg.depths);
  doc["rounds"] = vec(cfg.rounds);
  doc["trials"] = cfg.trials;
  doc["stop_confidence"] = cfg.stop_confidence;
  doc["context_update"] = update_name(cfg.update);
  doc["erasure_probs"] = vec(cfg.erasure_probs);
  doc["epsilons"] = vec(cfg.epsilons);
  doc["quantize_step"] = cfg.quantize_step;
  doc["threshold"] = cfg.threshold;
  doc["threads"] = cfg.threads;
  doc["output_dir"] = cfg.output_dir;
  return doc.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kParse, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::kInvalidConfig, "config must be an object");
  reject_unknown(doc,
                 {"name", "experiment", "seed", "world", "alphas", "betas", "tied", "lambda",
                  "depths", "rounds", "trials", "stop_confidence", "context_update",
                  "erasure_probs", "epsilons", "quantize_step", "threshold", "threads",
                  "output_dir"},
                 "");
  ExperimentConfig cfg;
  if (doc.contains("name")) cfg.name = read_string(doc["name"], "name");
  if (doc.contains("experiment")) {
    const std::string k = read_string(doc["experiment"], "experiment");
    if (k == "reliability") {
      cfg.kind = ExperimentKind::kReliability;
    } else if (k == "srlength") {
      cfg.kind = ExperimentKind::kSrLength;
    } else if (k == "perturbation") {
      cfg.kind = ExperimentKind::kPerturbation;
    } else {
      throw Error(Errc::kInvalidConfig, "unknown experiment '" + k + "'");
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw Error(Errc::kInvalidConfig, "'seed' must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("world")) {
    const json& w = doc["world"];
    if (!w.is_object()) throw Error(Errc::kInvalidConfig, "'world' must be an object");
    reject_unknown(w, {"num_actions", "num_concepts", "beta", "file", "resample_per_trial"}, "world.");
    if (w.contains("num_actions")) cfg.world.num_actions = static_cast<Index>(read_int(w["num_actions"], "world.num_actions"));
    if (w.contains("num_concepts")) cfg.world.num_concepts = static_cast<Index>(read_int(w["num_concepts"], "world.num_concepts"));
    if (w.contains("beta")) {
      const auto b = read_list<double>(w["beta"], "world.beta");
      if (b.size() != 2) throw Error(Errc::kInvalidConfig, "'world.beta' must hold two numbers");
      cfg.world.beta = {b[0], b[1]};
    }
    if (w.contains("file")) cfg.world.file = read_string(w["file"], "world.file");
    if (w.contains("resample_per_trial")) cfg.world.resample_per_trial = read_bool(w["resample_per_trial"], "world.resample_per_trial");
  }
  if (doc.contains("tied")) cfg.tied = read_bool(doc["tied"], "tied");
  if (doc.contains("alphas")) cfg.alphas = read_list<double>(doc["alphas"], "alphas");
  if (doc.contains("betas")) {
    cfg.betas = read_list<double>(doc["betas"], "betas");
  } else if (cfg.tied) {
    cfg.betas = cfg.alphas;
  }
  if (doc.contains("lambda")) cfg.lambda = read_real(doc["lambda"], "lambda");
  if (doc.contains("depths")) cfg.depths = read_list<int>(doc["depths"], "depths");
  if (doc.contains("rounds")) cfg.rounds = read_list<int>(doc["rounds"], "rounds");
  if (doc.contains("trials")) cfg.trials = static_cast<int>(read_int(doc["trials"], "trials"));
  if (doc.contains("stop_confidence")) cfg.stop_confidence = read_real(doc["stop_confidence"], "stop_confidence");
  if (doc.contains("context_update")) {
    const std::string u = read_string(doc["context_update"], "context_update");
    if (u == "anchored") {
      cfg.update = ContextUpdate::kPriorAnchored;
    } else if (u == "joint") {
      cfg.update = ContextUpdate::kJoint;
    } else {
      throw Error(Errc::kInvalidConfig, "context_update must be \"anchored\" or \"joint\"");
    }
  }
  if (doc.contains("erasure_probs")) cfg.erasure_probs = read_list<double>(doc["erasure_probs"], "erasure_probs");
  if (doc.contains("epsilons")) cfg.epsilons = read_list<double>(doc["epsilons"], "epsilons");
  if (doc.contains("quantize_step")) cfg.quantize_step = read_real(doc["quantize_step"], "quantize_step");
  if (doc.contains("threshold")) cfg.threshold = read_real(doc["threshold"], "threshold");
  if (doc.contains("threads")) cfg.threads = static_cast<int>(read_int(doc["threads"], "threads"));
  if (doc.contains("output_dir")) cfg.output_dir = read_string(doc["output_dir"], "output_dir");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::vector<std::string> preset_names() {
  return {"fig4", "fig4-small", "fig5", "fig5-small", "fig6", "fig6-small", "fig7", "fig7-small"};
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  const bool small = name.ends_with("-small");
  const std::string base = small ? name.substr(0, name.size() - 6) : name;
  if (base == "fig4") {
    c.kind = ExperimentKind::kReliability;
    c.tied = false;
    c.alphas = {1.0, 1.1, 1.5, 2.0};
    c.betas = c.alphas;
    c.depths = {20, 100, 200};
    c.rounds = {1};
  } else if (base == "fig5") {
    c.kind = ExperimentKind::kReliability;
    c.alphas = {1.1, 1.5, 2.0};
    c.betas = c.alphas;
    c.depths = {20, 200};
    c.rounds = {1, 2, 3, 4, 5};
  } else if (base == "fig6") {
    c.kind = ExperimentKind::kSrLength;
    c.alphas = {1.5, 2.0};
    c.betas = c.alphas;
    c.depths = {20, 100, 200};
    c.rounds = {10};
    c.erasure_probs = {0.0, 0.1, 0.2};
  } else if (base == "fig7") {
    c.kind = ExperimentKind::kPerturbation;
    c.alphas = {1.1};
    c.betas = c.alphas;
    c.depths = {200};
    c.rounds = {1};
    c.epsilons = {0.0, 0.05, 0.1, 0.15};
  } else {
    throw Error(Errc::kInvalidConfig, "unknown preset '" + name + "'");
  }
  c.trials = 500;
  if (small) {
    c.world.num_actions = 30;
    c.world.num_concepts = 30;
    c.trials = 100;
  }
  return c;
}

WorldInstance experiment_world(const ExperimentConfig& cfg) {
  if (!cfg.world.file.empty()) return load_world(cfg.world.file);
  Rng rng = Rng::stream(cfg.seed, kWorldKey);
  return gen_world(cfg.world.num_actions, cfg.world.num_concepts, cfg.world.beta, rng);
}

ExperimentResult run_reliability_sweep(const ExperimentConfig& cfg) {
  return run_dialogue_experiment(cfg, false);
}

ExperimentResult run_srlength_experiment(const ExperimentConfig& cfg) {
  return run_dialogue_experiment(cfg, true);
}

ExperimentResult run_perturbation_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const WorldInstance world = experiment_world(cfg);
  const std::vector<GridCell> grid = dialogue_grid(cfg);
  ExperimentResult result{cfg, {}};
  const std::uint64_t perturb_seed = derive_seed(cfg.seed, kPerturbKey);

  for (const GridCell& g : grid) {
    const DialogueConfig dcfg = dialogue_config(cfg, g.ab, g.depth, g.rounds);
    for (double eps : cfg.epsilons) {
      for (const bool quantized : {false, true}) {
        DialogueCache cache;
        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
        // The same per-trial streams serve every cell, epsilon and init mode,
        // so the curves differ only through epsilon and the quantizer.
        parallel_for(cfg.trials, cfg.threads, [&](int trial) {
          const WorldInstance w = trial_world(cfg, world, trial);
          const std::uint64_t trial_seed = derive_seed(perturb_seed, static_cast<std::uint64_t>(trial));
          Rng pick = Rng::stream(trial_seed, 0);
          Rng at_speaker = Rng::stream(trial_seed, 1);
          Rng at_listener = Rng::stream(trial_seed, 2);
          const ActionId intended{static_cast<std::size_t>(sample(w.world.prior_actions, pick))};
          const RelevanceModel& own_s = speaker_of(w).relevance;
          const RelevanceModel& own_l = listener_of(w).relevance;
          ReasoningView speaker_view{own_s, perturb_model(own_l, eps, at_speaker)};
          ReasoningView listener_view{perturb_model(own_s, eps, at_listener), own_l};
          if (quantized) {
            for (RelevanceModel* m : {&speaker_view.speaker_model, &speaker_view.listener_model,
                                      &listener_view.speaker_model, &listener_view.listener_model}) {
              *m = quantize_model(*m, cfg.quantize_step);
            }
          }
          DialogueReport rep;
          if (speaker_view.speaker_model == listener_view.speaker_model &&
              speaker_view.listener_model == listener_view.listener_model) {
            rep = run_dialogue(AgentProfile{"speaker", speaker_view.speaker_model},
                               AgentProfile{"listener", speaker_view.listener_model}, w.world,
                               intended, dcfg, cfg.world.resample_per_trial ? nullptr : &cache);
          } else {
            rep = run_dialogue(speaker_view, listener_view, w.world, intended, dcfg);
          }
          score_report(rep, outcomes[static_cast<std::size_t>(trial)]);
        });
        CellResult base;
        base.experiment = "perturbation";
        base.alpha = g.ab.first;
        base.beta = g.ab.second;
        base.lambda = cfg.lambda;
        base.depth = g.depth;
        base.rounds = g.rounds;
        base.epsilon = eps;
        base.init = quantized ? "quantized" : "raw";
        result.cells.push_back(reduce(outcomes, base, 0, false));
      }
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::kReliability:
      return run_reliability_sweep(cfg);
    case ExperimentKind::kSrLength:
      return run_srlength_experiment(cfg);
    case ExperimentKind::kPerturbation:
      return run_perturbation_experiment(cfg);
  }
  throw Error(Errc::kInvalidConfig, "unknown experiment kind");
}

std::string csv_header() {
  return "experiment,alpha,beta,lambda,depth,rounds,erasure_prob,epsilon,init,trials,"
         "successes,gamma,mean_rounds_used,s1_bits,s2_bits,s1_channel_uses,"
         "s2_channel_uses,mean_g_final,s1_fallback_rate,posterior_drops,"
         "bound_violations,single_support_rounds";
}

std::string to_csv(const ExperimentResult& result) {
  std::string out = csv_header() + "\n";
  for (const CellResult& c : result.cells) {
    out += c.experiment + "," + num(c.alpha) + "," + num(c.beta) + "," + num(c.lambda) + "," +
           std::to_string(c.depth) + "," + std::to_string(c.rounds) + "," +
           num(c.erasure_prob) + "," + num(c.epsilon) + "," + c.init + "," +
           std::to_string(c.trials) + "," + std::to_string(c.successes) + "," +
           num(c.gamma) + "," + num(c.mean_rounds_used) + "," + num(c.s1_bits) + "," +
           num(c.s2_bits) + "," + num(c.s1_channel_uses) + "," + num(c.s2_channel_uses) +
           "," + num(c.mean_g_final) + "," + num(c.s1_fallback_rate) + "," +
           std::to_string(c.posterior_drops) + "," + std::to_string(c.bound_violations) +
           "," + std::to_string(c.single_support_rounds) + "\n";
  }
  return out;
}

ReportFiles emit_report(const ExperimentResult& result, const std::filesystem::path& dir,
                        double wall_seconds) {
  if (result.cells.empty()) throw Error(Errc::kInvalidConfig, "no results to report");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::kIo, "cannot create " + dir.string() + ": " + ec.message());
  ReportFiles files{dir / (result.config.name + ".csv"),
                    dir / (result.config.name + ".manifest.json")};
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(Errc::kIo, "cannot open " + p.string() + " for writing");
    out << text;
    if (!out) throw Error(Errc::kIo, "write failed for " + p.string());
  };
  write(files.csv, to_csv(result));
  json manifest;
  manifest["name"] = result.config.name;
  manifest["experiment"] = kind_name(result.config.kind);
  manifest["seed"] = result.config.seed;
  manifest["config"] = json::parse(config_to_json(result.config));
  manifest["csv"] = files.csv.filename().string();
  manifest["csv_columns"] = csv_header();
  manifest["rows"] = result.cells.size();
  manifest["snc_version"] = kVersion;
  manifest["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION);
  manifest["wall_seconds"] = wall_seconds;
  write(files.manifest, manifest.dump(2) + "\n");
  return files;
}

}  // namespace snc
