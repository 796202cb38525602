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

#ifndef SNC_WORLD_HPP_
#define SNC_WORLD_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "snc/ids.hpp"
#include "snc/probcore.hpp"
#include "snc/rng.hpp"

namespace snc {

// Per-agent action/concept relevance: entry (a, c) is the probability that
// concept c is relevant to action a. Entries are independent Bernoulli
// parameters, so rows are not normalized; every row must have positive mass.
class RelevanceModel {
 public:
  explicit RelevanceModel(Matrix p_true);

  Index num_actions() const noexcept { return p_.rows(); }
  Index num_concepts() const noexcept { return p_.cols(); }
  double operator()(ActionId a, ConceptId c) const {
    return p_(static_cast<Index>(index(a)), static_cast<Index>(index(c)));
  }
  const Matrix& p_true() const noexcept { return p_; }

  friend bool operator==(const RelevanceModel&, const RelevanceModel&) = default;

 private:
  Matrix p_;
};

// Bijection between concepts and transmittable symbols.
class SymbolTable {
 public:
  // to_symbol[c] is the symbol of concept c; must be a permutation.
  explicit SymbolTable(std::vector<SymbolId> to_symbol);

  static SymbolTable identity(Index n);

  Index size() const noexcept { return static_cast<Index>(to_symbol_.size()); }
  SymbolId symbol(ConceptId c) const;
  ConceptId concept_of(SymbolId s) const;
  const std::vector<SymbolId>& mapping() const noexcept { return to_symbol_; }

  friend bool operator==(const SymbolTable&, const SymbolTable&) = default;

 private:
  std::vector<SymbolId> to_symbol_;
  std::vector<ConceptId> from_symbol_;
};

struct AgentProfile {
  std::string task_id;
  RelevanceModel relevance;

  friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

struct World {
  Index num_actions;
  Index num_concepts;
  Dist prior_actions;
  Dist prior_concepts;
  SymbolTable symbols;

  friend bool operator==(const World&, const World&) = default;
};

// A world together with the agents that live in it (one or two).
struct WorldInstance {
  World world;
  std::vector<AgentProfile> agents;

  const AgentProfile& agent(std::size_t i = 0) const { return agents.at(i); }

  friend bool operator==(const WorldInstance&, const WorldInstance&) = default;
};

struct BetaPair {
  double a = 0.1;
  double b = 0.1;
};

// Draws every relevance entry independently from Beta(a, b). Priors are
// uniform and the symbol table is the identity. A row that comes out all
// zero is redrawn.
WorldInstance gen_world(Index num_actions, Index num_concepts, BetaPair beta,
                        Rng& rng);

// Three-image referential game: a1 = rabbit sitting, a2 = rabbit jumping,
// a3 = rabbit jumping into a ring.
namespace rabbit {
inline constexpr ActionId kSitting{0};
inline constexpr ActionId kJumping{1};
inline constexpr ActionId kRing{2};
inline constexpr ConceptId kRabbitConcept{0};
inline constexpr ConceptId kJumpingConcept{1};
inline constexpr ConceptId kRingConcept{2};
}  // namespace rabbit

WorldInstance rabbit_fixture();

// Adds an independent U[-epsilon, +epsilon] draw to every entry and clamps to
// [0, 1]. Rows that end up all zero are perturbed again.
RelevanceModel perturb_model(const RelevanceModel& m, double epsilon, Rng& rng);

// Rounds every entry to the nearest multiple of `step` (ties upward), clamped
// to [0, 1]. A row rounded to all zeros gets `step` at its original argmax.
RelevanceModel quantize_model(const RelevanceModel& m, double step = 0.1);

// World files are JSON documents:
//
//   {
//     "format": "snc-world",
//     "version": 1,
//     "num_actions": |A|,
//     "num_concepts": |C|,
//     "prior_actions": [|A| reals],
//     "prior_concepts": [|C| reals],
//     "symbol_table": [|C| symbol ids, optional, identity if absent],
//     "agents": [{"task_id": string, "p_true": [|A|*|C| reals, row-major]}]
//   }
//
// Reals are written in shortest round-trip form (at most 17 significant
// digits), so load(save(w)) == w bit for bit.
std::string world_to_json(const WorldInstance& w);
WorldInstance world_from_json(const std::string& text);
void save_world(const std::filesystem::path& path, const WorldInstance& w);
WorldInstance load_world(const std::filesystem::path& path);

}  // namespace snc

#endif  // SNC_WORLD_HPP_
