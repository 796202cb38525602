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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "snc/dialogue.hpp"
#include "snc/harness.hpp"
#include "snc/reasoning.hpp"
#include "snc/world.hpp"

namespace {

using nlohmann::json;

struct WorldSource {
  std::string path;
  bool rabbit = false;
};

void add_world_source(CLI::App* cmd, WorldSource& src) {
  auto* file = cmd->add_option("--world", src.path, "World file (JSON)");
  auto* rabbit = cmd->add_flag("--rabbit", src.rabbit, "Use the three-image rabbit world");
  file->excludes(rabbit);
}

snc::WorldInstance resolve(const WorldSource& src) {
  if (src.rabbit) return snc::rabbit_fixture();
  if (src.path.empty()) throw snc::Error(snc::Errc::kInvalidConfig, "give --world or --rabbit");
  return snc::load_world(src.path);
}

struct ReasoningFlags {
  double alpha = 1.5;
  double beta = 1.5;
  double lambda = 0.5;
  int depth = 200;
  std::string update = "anchored";
  std::optional<double> tolerance;
};

void add_reasoning_flags(CLI::App* cmd, ReasoningFlags& f) {
  cmd->add_option("--alpha", f.alpha, "Speaker rationality")->capture_default_str();
  cmd->add_option("--beta", f.beta, "Listener rationality")->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "Speaker/listener mixing weight")->capture_default_str();
  cmd->add_option("--depth", f.depth, "Recursion depth r")->capture_default_str();
  cmd->add_option("--update", f.update, "Context renormalization")
      ->check(CLI::IsMember({"anchored", "joint"}))
      ->capture_default_str();
  cmd->add_option("--tolerance", f.tolerance, "Stop once |dG| falls below this");
}

snc::ReasoningParams params_of(const ReasoningFlags& f) {
  snc::ReasoningParams p;
  p.alpha = f.alpha;
  p.beta = f.beta;
  p.lambda = f.lambda;
  p.max_depth = f.depth;
  p.update = f.update == "joint" ? snc::ContextUpdate::kJoint : snc::ContextUpdate::kPriorAnchored;
  if (f.tolerance) {
    p.g_tolerance = *f.tolerance;
    p.stop_at_tolerance = true;
  }
  p.validate();
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw snc::Error(snc::Errc::kIo, "cannot open " + path.string());
  out << text;
}

std::string manifest_path(const std::string& csv) {
  std::filesystem::path p(csv);
  return (p.parent_path() / (p.stem().string() + ".manifest.json")).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantics-native communication simulator"};
  app.require_subcommand(1);

  // gen-world
  auto* gen = app.add_subcommand("gen-world", "Generate a random world");
  snc::Index actions = 100, concepts = 100;
  double beta_a = 0.1, beta_b = 0.1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool gen_rabbit = false;
  gen->add_option("--actions", actions, "Number of actions")->capture_default_str();
  gen->add_option("--concepts", concepts, "Number of concepts")->capture_default_str();
  gen->add_option("--beta-a", beta_a, "Relevance Beta shape a")->capture_default_str();
  gen->add_option("--beta-b", beta_b, "Relevance Beta shape b")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_flag("--rabbit", gen_rabbit, "Write the rabbit world instead");
  gen->add_option("--out", gen_out, "Output world file")->required();

  // run-reasoning
  auto* reason = app.add_subcommand("run-reasoning", "Run one self-SNC and dump the objective trace");
  WorldSource reason_src;
  ReasoningFlags reason_flags;
  std::string reason_out;
  add_world_source(reason, reason_src);
  add_reasoning_flags(reason, reason_flags);
  reason->add_option("--out", reason_out, "Trace CSV (step,half,g)");

  // run-dialogue
  auto* dia = app.add_subcommand("run-dialogue", "Run one greedy dialogue");
  WorldSource dia_src;
  ReasoningFlags dia_flags;
  std::size_t dia_action = 0;
  int dia_rounds = 1;
  double dia_delta = 0.01;
  std::string dia_out;
  add_world_source(dia, dia_src);
  add_reasoning_flags(dia, dia_flags);
  dia->add_option("--action", dia_action, "Intended action index")->required();
  dia->add_option("--rounds", dia_rounds, "Maximum rounds K")->capture_default_str();
  dia->add_option("--stop-confidence", dia_delta, "Stop once the posterior max >= 1 - value")
      ->capture_default_str();
  dia->add_option("--out", dia_out, "Per-round CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a preset or a config file");
  std::string sweep_target;
  std::uint64_t sweep_seed = 0;
  std::optional<int> sweep_trials, sweep_threads;
  std::optional<std::string> sweep_out;
  sweep->add_option("target", sweep_target, "Preset name or config path")->required();
  sweep->add_option("--seed", sweep_seed, "Base seed")->required();
  sweep->add_option("--trials", sweep_trials, "Override trials per cell");
  sweep->add_option("--threads", sweep_threads, "Worker threads");
  sweep->add_option("--out", sweep_out, "Output directory");
  auto* list = app.add_subcommand("presets", "List sweep presets");

  // perturb
  auto* pert = app.add_subcommand("perturb", "Write a perturbed (and optionally quantized) world");
  WorldSource pert_src;
  double pert_eps = 0.05;
  std::uint64_t pert_seed = 0;
  std::optional<double> pert_step;
  std::string pert_out;
  add_world_source(pert, pert_src);
  pert->add_option("--epsilon", pert_eps, "Uniform perturbation half-width")->capture_default_str();
  pert->add_option("--seed", pert_seed, "Seed")->required();
  pert->add_option("--quantize", pert_step, "Quantize to this step after perturbing");
  pert->add_option("--out", pert_out, "Output world file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (!gen_rabbit && (actions < 1 || concepts < 1 || !(beta_a > 0) || !(beta_b > 0))) {
        throw snc::Error(snc::Errc::kInvalidParams, "counts and Beta shapes must be positive");
      }
      snc::Rng rng(gen_seed);
      const snc::WorldInstance w = gen_rabbit ? snc::rabbit_fixture()
                                              : snc::gen_world(actions, concepts, {beta_a, beta_b}, rng);
      snc::save_world(gen_out, w);
      std::cout << "wrote " << gen_out << " (" << w.world.num_actions << " actions, "
                << w.world.num_concepts << " concepts)\n";
    } else if (reason->parsed()) {
      const snc::WorldInstance w = resolve(reason_src);
      const snc::ReasoningParams p = params_of(reason_flags);
      const auto& listener = w.agents.size() > 1 ? w.agent(1) : w.agent(0);
      const snc::ReasoningOutcome o =
          snc::run_self_snc(w.agent(0).relevance, listener.relevance, w.world.prior_actions,
                            w.world.prior_concepts, p);
      std::cout << "depth " << o.depth_used << (o.converged ? " (converged)" : "")
                << ", G " << o.g_trace.back() << "\n";
      for (snc::Index a = 0; a < o.ra2c.rows(); ++a) {
        std::cout << "a" << a << " -> c" << o.ra2c.row(a).argmax() << "\n";
      }
      if (!reason_out.empty()) {
        std::string csv = "step,half,g\n";
        for (std::size_t i = 0; i < o.g_trace.size(); ++i) {
          const std::size_t step = (i + 1) / 2;
          const char* half = i == 0 ? "init" : (i % 2 ? "speaker" : "listener");
          csv += std::to_string(step) + "," + half + "," + nlohmann::json(o.g_trace[i]).dump() + "\n";
        }
        write_file(reason_out, csv);
        json m{{"command", "run-reasoning"}, {"alpha", p.alpha}, {"beta", p.beta},
               {"lambda", p.lambda}, {"max_depth", p.max_depth}, {"update", reason_flags.update},
               {"depth_used", o.depth_used}, {"converged", o.converged}};
        write_file(manifest_path(reason_out), m.dump(2) + "\n");
      }
    } else if (dia->parsed()) {
      const snc::WorldInstance w = resolve(dia_src);
      snc::DialogueConfig cfg;
      cfg.k_max = dia_rounds;
      cfg.stop_confidence = dia_delta;
      cfg.reasoning = params_of(dia_flags);
      const auto& listener = w.agents.size() > 1 ? w.agent(1) : w.agent(0);
      const snc::DialogueReport r =
          snc::run_dialogue(w.agent(0), listener, w.world, snc::ActionId{dia_action}, cfg);
      std::string csv = "round,concept,symbol,posterior_of_intended,lower_bits,upper_bits,huffman_bits,sent_bits\n";
      for (std::size_t k = 0; k < r.rounds.size(); ++k) {
        const auto& rr = r.rounds[k];
        std::cout << "round " << k + 1 << ": c" << snc::index(rr.sent)
                  << " posterior " << rr.posterior_of_intended << ", " << rr.sent_bits << " bits\n";
        csv += std::to_string(k + 1) + "," + std::to_string(snc::index(rr.sent)) + "," +
               std::to_string(snc::index(w.world.symbols.symbol(rr.sent))) + "," +
               json(rr.posterior_of_intended).dump() + "," + json(rr.bounds.lower).dump() + "," +
               json(rr.bounds.upper).dump() + "," + json(rr.huffman_expected_bits).dump() + "," +
               std::to_string(rr.sent_bits) + "\n";
      }
      std::cout << "guess a" << snc::index(r.listener_guess) << (r.success ? " (success)" : " (failure)")
                << (r.early_stopped ? ", stopped early" : "") << (r.exhausted ? ", exhausted" : "")
                << (r.stalled ? ", stalled" : "") << "\n";
      if (!dia_out.empty()) {
        write_file(dia_out, csv);
        json m{{"command", "run-dialogue"}, {"action", dia_action}, {"rounds", dia_rounds},
               {"alpha", cfg.reasoning.alpha}, {"beta", cfg.reasoning.beta},
               {"lambda", cfg.reasoning.lambda}, {"depth", cfg.reasoning.max_depth},
               {"guess", snc::index(r.listener_guess)}, {"success", r.success}};
        write_file(manifest_path(dia_out), m.dump(2) + "\n");
      }
    } else if (sweep->parsed()) {
      bool is_preset = false;
      for (const auto& n : snc::preset_names()) is_preset = is_preset || n == sweep_target;
      snc::ExperimentConfig cfg = is_preset ? snc::preset(sweep_target) : snc::load_config(sweep_target);
      cfg.seed = sweep_seed;
      if (sweep_trials) cfg.trials = *sweep_trials;
      if (sweep_threads) cfg.threads = *sweep_threads;
      if (sweep_out) cfg.output_dir = *sweep_out;
      cfg.validate();
      const auto t0 = std::chrono::steady_clock::now();
      const snc::ExperimentResult result = snc::run_experiment(cfg);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto files = snc::emit_report(result, cfg.output_dir, secs);
      std::cout << snc::to_csv(result);
      std::cerr << "wrote " << files.csv.string() << " and " << files.manifest.string() << "\n";
    } else if (list->parsed()) {
      for (const auto& n : snc::preset_names()) std::cout << n << "\n";
    } else if (pert->parsed()) {
      snc::WorldInstance w = resolve(pert_src);
      if (!(pert_eps >= 0.0)) throw snc::Error(snc::Errc::kInvalidParams, "epsilon must be nonnegative");
      for (std::size_t i = 0; i < w.agents.size(); ++i) {
        snc::Rng rng = snc::Rng::stream(pert_seed, i);
        snc::RelevanceModel m = snc::perturb_model(w.agents[i].relevance, pert_eps, rng);
        if (pert_step) m = snc::quantize_model(m, *pert_step);
        w.agents[i].relevance = std::move(m);
      }
      snc::save_world(pert_out, w);
      std::cout << "wrote " << pert_out << "\n";
    }
  } catch (const snc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
