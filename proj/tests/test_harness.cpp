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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "snc/harness.hpp"

namespace snc {
namespace {

ExperimentConfig tiny(ExperimentKind kind) {
  ExperimentConfig c;
  c.name = "tiny";
  c.kind = kind;
  c.seed = 5;
  c.world.num_actions = 8;
  c.world.num_concepts = 8;
  c.alphas = {1.1, 2.0};
  c.betas = c.alphas;
  c.depths = {10, 30};
  c.rounds = {1, 2};
  c.trials = 20;
  return c;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::size_t field_count(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Errc config_error(const std::string& text) {
  try {
    config_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kAllZero;
}

TEST(Config, RoundTrip) {
  ExperimentConfig c = tiny(ExperimentKind::kPerturbation);
  c.tied = false;
  c.betas = {1.0, 1.5, 3.0};
  c.update = ContextUpdate::kJoint;
  c.epsilons = {0.0, 0.1};
  c.world.beta = {0.3, 0.7};
  const ExperimentConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_EQ(back.rationality_pairs().size(), 6u);
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_EQ(config_error(R"({"seed": 1, "trails": 5})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"world": {"num_actions": 4, "size": 2}})"), Errc::kInvalidConfig);
}

TEST(Config, TypeAndRangeErrors) {
  EXPECT_EQ(config_error(R"({"trials": 0})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"trials": "many"})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"alphas": []})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"alphas": [0.5]})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"lambda": 1.0})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"experiment": "magic"})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"context_update": "lazy"})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"erasure_probs": [1.0]})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"seed": -1})"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"([1, 2])"), Errc::kInvalidConfig);
  EXPECT_EQ(config_error(R"({"seed": )"), Errc::kParse);
}

TEST(Config, TiedGridTakesBetasFromAlphas) {
  const ExperimentConfig c = config_from_json(R"({"alphas": [1.1, 1.5], "tied": true})");
  EXPECT_EQ(c.betas, c.alphas);
  const auto pairs = c.rationality_pairs();
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[1], std::make_pair(1.5, 1.5));
}

TEST(Config, LoadMissingFile) {
  try {
    load_config("/nonexistent/config.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIo);
  }
}

TEST(Presets, AllValid) {
  for (const std::string& name : preset_names()) {
    const ExperimentConfig c = preset(name);
    EXPECT_NO_THROW(c.validate()) << name;
    EXPECT_EQ(c.name, name);
    EXPECT_GE(c.trials, 100);
  }
  EXPECT_EQ(preset("fig4").rationality_pairs().size(), 16u);
  EXPECT_EQ(preset("fig5").rationality_pairs().size(), 3u);
  EXPECT_THROW(preset("fig9"), Error);
}

TEST(Reliability, RowCountAndShape) {
  const ExperimentResult r = run_experiment(tiny(ExperimentKind::kReliability));
  EXPECT_EQ(r.cells.size(), 2u * 2u * 2u);
  const std::string csv = to_csv(r);
  EXPECT_EQ(line_count(csv), 1u + r.cells.size());
  const std::string header = csv.substr(0, csv.find('\n'));
  const std::string first = csv.substr(header.size() + 1, csv.find('\n', header.size() + 1) - header.size() - 1);
  EXPECT_EQ(field_count(header), field_count(first));
  for (const CellResult& c : r.cells) {
    EXPECT_EQ(c.trials, 20);
    EXPECT_GE(c.gamma, 0.0);
    EXPECT_LE(c.gamma, 1.0);
    EXPECT_DOUBLE_EQ(c.gamma, static_cast<double>(c.successes) / c.trials);
    EXPECT_EQ(c.posterior_drops, 0);
    EXPECT_LE(c.mean_rounds_used, c.rounds);
  }
}

TEST(Reliability, DeterministicAcrossRunsAndThreads) {
  ExperimentConfig c = tiny(ExperimentKind::kReliability);
  const std::string a = to_csv(run_experiment(c));
  EXPECT_EQ(to_csv(run_experiment(c)), a);
  c.threads = 3;
  EXPECT_EQ(to_csv(run_experiment(c)), a);
  c.seed = 6;
  EXPECT_NE(to_csv(run_experiment(c)), a);
}

TEST(SrLength, RowsAndChannelScaling) {
  ExperimentConfig c = tiny(ExperimentKind::kSrLength);
  c.rounds = {3};
  c.erasure_probs = {0.0, 0.5};
  c.world.num_actions = 12;
  c.world.num_concepts = 40;
  const ExperimentResult r = run_experiment(c);
  EXPECT_EQ(r.cells.size(), 2u * 2u * 2u);
  for (const CellResult& cell : r.cells) {
    EXPECT_GT(cell.s1_bits, 0.0);
    EXPECT_GT(cell.s2_bits, 0.0);
    if (cell.erasure_prob == 0.0) {
      EXPECT_DOUBLE_EQ(cell.s1_channel_uses, cell.s1_bits);
      EXPECT_DOUBLE_EQ(cell.s2_channel_uses, cell.s2_bits);
    } else {
      EXPECT_GT(cell.s1_channel_uses, cell.s1_bits);
    }
  }
}

TEST(Perturbation, RowsAndZeroEpsilon) {
  ExperimentConfig c = tiny(ExperimentKind::kPerturbation);
  c.alphas = {1.5};
  c.betas = c.alphas;
  c.depths = {30};
  c.rounds = {1};
  c.epsilons = {0.0, 0.1};
  const ExperimentResult r = run_experiment(c);
  ASSERT_EQ(r.cells.size(), 4u);
  int raw = 0, quantized = 0;
  for (const CellResult& cell : r.cells) {
    raw += cell.init == "raw";
    quantized += cell.init == "quantized";
  }
  EXPECT_EQ(raw, 2);
  EXPECT_EQ(quantized, 2);
  c.threads = 2;
  EXPECT_EQ(to_csv(run_experiment(c)), to_csv(r));
}

TEST(Report, WritesCsvAndManifest) {
  const auto dir = std::filesystem::temp_directory_path() / "snc_test_report";
  std::filesystem::remove_all(dir);
  const ExperimentResult r = run_experiment(tiny(ExperimentKind::kReliability));
  const ReportFiles files = emit_report(r, dir, 1.25);
  EXPECT_EQ(slurp(files.csv), to_csv(r));
  const std::string manifest = slurp(files.manifest);
  EXPECT_NE(manifest.find("\"seed\""), std::string::npos);
  EXPECT_NE(manifest.find("\"wall_seconds\""), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Report, EmptyGridWritesNothing) {
  const auto dir = std::filesystem::temp_directory_path() / "snc_test_empty";
  std::filesystem::remove_all(dir);
  ExperimentResult r{tiny(ExperimentKind::kReliability), {}};
  try {
    emit_report(r, dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidConfig);
  }
  EXPECT_FALSE(std::filesystem::exists(dir / "tiny.csv"));
}

}  // namespace
}  // namespace snc
