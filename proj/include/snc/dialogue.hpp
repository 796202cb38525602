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

#ifndef SNC_DIALOGUE_HPP_
#define SNC_DIALOGUE_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "snc/ids.hpp"
#include "snc/probcore.hpp"
#include "snc/reasoning.hpp"
#include "snc/system1.hpp"
#include "snc/world.hpp"

namespace snc {

struct DialogueConfig {
  int k_max = 1;
  ReasoningParams reasoning;
  // Stop once the listener's posterior puts at least 1 - stop_confidence on
  // one action. Zero disables early stopping short of certainty.
  double stop_confidence = 0.01;

  void validate() const;
};

struct TranscriptEntry {
  ConceptId concept_id;
  Dist posterior;  // rC2A(. | concept) used as the next action prior
};

struct DialogueState {
  Dist prior_a;
  Vector prior_c;  // zero on sent concepts; all zero once every concept is sent
  std::vector<bool> remaining;
  std::vector<TranscriptEntry> transcript;

  static DialogueState initial(const World& world);
  int round() const noexcept { return static_cast<int>(transcript.size()); }
  bool is_remaining(ConceptId c) const;
  bool exhausted() const;
};

// prior_a <- rc2a_row; prior_c(c_k) <- 0 and the rest renormalized over the
// remaining concepts. Throws ConceptAlreadySent.
DialogueState update_priors(const DialogueState& state, ConceptId c_k, const Dist& rc2a_row);

// p^k_C(c) = sum_a rA2C(c | a) prior_a(a).
Vector round_concept_marginal(const CondMatrix& ra2c, const Dist& prior_a);

// lower = H2(p), upper = sum p ceil(-log2 p).
BitBounds code_bounds(const Vector& p);

// Bounds summed over rounds; round k uses ra2c[k] and prior_a[k], the action
// prior in force when round k started.
BitBounds s2_bitlength_bounds(const std::vector<CondMatrix>& ra2c,
                              const std::vector<Dist>& prior_a);

struct RoundRecord {
  ConceptId sent;
  Dist posterior;
  double posterior_of_intended = 0.0;
  Vector concept_marginal;  // p^k_C
  BitBounds bounds;
  double huffman_expected_bits = 0.0;  // sum p^k_C len over a Huffman code of p^k_C
  std::size_t sent_bits = 0;           // codeword length of the sent concept
  bool single_support = false;         // p^k_C is a point mass
  double g_final = 0.0;
  int depth_used = 0;
};

struct DialogueReport {
  ActionId intended{0};
  std::vector<ConceptId> sent_concepts;
  ActionId listener_guess{0};
  bool success = false;
  std::vector<double> posterior_trace;
  std::vector<RoundRecord> rounds;
  bool exhausted = false;      // ran out of concepts before k_max
  bool early_stopped = false;  // listener confidence reached 1 - delta
  bool stalled = false;        // no remaining concept had evidence

  std::size_t total_bits() const;
};

// Everything a dialogue needs from one self-SNC run.
struct RoundArtifacts {
  CondMatrix ra2c;
  CondMatrix rc2a;
  double g_final = 0.0;
  int depth_used = 0;
};

// Memoizes self-SNC runs of a symmetric dialogue by the sequence of concepts
// sent so far (which determines the priors). Valid for one world, one pair of
// models and one DialogueConfig. Thread-safe.
class DialogueCache {
 public:
  std::shared_ptr<const RoundArtifacts> find(const std::vector<std::size_t>& key) const;
  void insert(const std::vector<std::size_t>& key, std::shared_ptr<const RoundArtifacts> v);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::vector<std::size_t>, std::shared_ptr<const RoundArtifacts>> entries_;
};

// The pair of models an agent feeds into its own self-SNC.
struct ReasoningView {
  RelevanceModel speaker_model;
  RelevanceModel listener_model;
};

// Greedy K-concept dialogue. Both agents reason with (speaker, listener)
// models, so one self-SNC per round serves both.
DialogueReport run_dialogue(const AgentProfile& speaker, const AgentProfile& listener,
                            const World& world, ActionId intended,
                            const DialogueConfig& cfg, DialogueCache* cache = nullptr);

// Each agent runs its own self-SNC from its own view and keeps its own action
// prior; the speaker picks concepts from its rA2C, the listener decodes with
// its rC2A.
DialogueReport run_dialogue(const ReasoningView& speaker_view,
                            const ReasoningView& listener_view, const World& world,
                            ActionId intended, const DialogueConfig& cfg);

// True when posterior_trace never decreases by more than `slack`.
bool check_theorem3(const DialogueReport& report, double slack = 1e-9);

}  // namespace snc

#endif  // SNC_DIALOGUE_HPP_
