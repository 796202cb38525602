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

#ifndef SNC_HARNESS_HPP_
#define SNC_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "snc/reasoning.hpp"
#include "snc/world.hpp"

namespace snc {

enum class ExperimentKind { kReliability, kSrLength, kPerturbation };

struct WorldSpec {
  Index num_actions = 100;
  Index num_concepts = 100;
  BetaPair beta;
  // When set, the world is loaded from this file instead of generated.
  std::string file;
  bool resample_per_trial = false;
};

// Experiment configuration. As a JSON document every key below is optional
// and unknown keys are rejected:
//
//   name               string          report file stem
//   experiment         "reliability" | "srlength" | "perturbation"
//   seed               integer         base seed
//   world              {num_actions, num_concepts, beta: [a, b], file,
//                       resample_per_trial}
//   alphas, betas      [reals]         rationality grid
//   tied               bool            pair alphas[i] with itself (beta = alpha)
//   lambda             real
//   depths             [integers]      recursion depths r
//   rounds             [integers]      dialogue rounds K
//   trials             integer         trials per cell
//   stop_confidence    real            early stop at posterior >= 1 - value
//   context_update     "anchored" | "joint"
//   erasure_probs      [reals]         BEC erasure probabilities (srlength)
//   epsilons           [reals]         perturbation widths (perturbation)
//   quantize_step      real            quantizer step (perturbation)
//   threshold          real            System 1 extraction threshold
//   threads            integer         worker threads; output does not depend on it
//   output_dir         string
struct ExperimentConfig {
  std::string name = "experiment";
  ExperimentKind kind = ExperimentKind::kReliability;
  std::uint64_t seed = 0;
  WorldSpec world;
  std::vector<double> alphas{1.5};
  std::vector<double> betas{1.5};
  bool tied = true;
  double lambda = 0.5;
  std::vector<int> depths{200};
  std::vector<int> rounds{1};
  int trials = 500;
  double stop_confidence = 0.01;
  ContextUpdate update = ContextUpdate::kPriorAnchored;
  std::vector<double> erasure_probs{0.0};
  std::vector<double> epsilons{0.0};
  double quantize_step = 0.1;
  double threshold = 0.9;
  int threads = 1;
  std::string output_dir = "out";

  void validate() const;
  // (alpha, beta) pairs of the grid, in row-major order.
  std::vector<std::pair<double, double>> rationality_pairs() const;
};

std::string kind_name(ExperimentKind k);
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// fig4, fig5, fig6, fig7 and their -small variants.
std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

struct CellResult {
  std::string experiment;
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  int depth = 0;
  int rounds = 0;
  double erasure_prob = 0.0;
  double epsilon = 0.0;
  std::string init;  // "shared", "raw" or "quantized"
  int trials = 0;
  int successes = 0;
  double gamma = 0.0;
  double mean_rounds_used = 0.0;
  double s1_bits = 0.0;  // mean System 1 SR bits over trials
  double s2_bits = 0.0;  // mean System 2 SR bits over trials
  double s1_channel_uses = 0.0;
  double s2_channel_uses = 0.0;
  double mean_g_final = 0.0;
  double s1_fallback_rate = 0.0;
  int posterior_drops = 0;
  int bound_violations = 0;  // rounds whose Huffman length left the code bounds
  int single_support_rounds = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CellResult> cells;
};

// World used by every trial of a sweep (unless resampled per trial).
WorldInstance experiment_world(const ExperimentConfig& cfg);

ExperimentResult run_reliability_sweep(const ExperimentConfig& cfg);
ExperimentResult run_srlength_experiment(const ExperimentConfig& cfg);
ExperimentResult run_perturbation_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string csv_header();
std::string to_csv(const ExperimentResult& result);

struct ReportFiles {
  std::filesystem::path csv;
  std::filesystem::path manifest;
};

// Writes <dir>/<name>.csv and <dir>/<name>.manifest.json. The CSV is a pure
// function of the config; the manifest also records wall-clock time.
ReportFiles emit_report(const ExperimentResult& result, const std::filesystem::path& dir,
                        double wall_seconds = 0.0);

}  // namespace snc

#endif  // SNC_HARNESS_HPP_
