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

#ifndef SNC_SYSTEM1_HPP_
#define SNC_SYSTEM1_HPP_

#include <vector>

#include "snc/codebook.hpp"
#include "snc/ids.hpp"
#include "snc/probcore.hpp"
#include "snc/world.hpp"

namespace snc {

inline constexpr double kDefaultExtractionThreshold = 0.9;

// Concepts with p_true(a, c) >= threshold, ascending. May be empty.
std::vector<ConceptId> extract_concepts(const AgentProfile& agent, ActionId a,
                                        double threshold = kDefaultExtractionThreshold);

// p(c | a): row a of the relevance model, normalized.
Dist a2c(const AgentProfile& agent, ActionId a);

// p(a | X_c = TRUE) under `prior` (Bayes over the relevance column of c).
Dist c2a(const AgentProfile& agent, ConceptId c, const Dist& prior);

struct SemanticRep {
  ActionId origin;
  std::vector<SymbolId> symbols;

  friend bool operator==(const SemanticRep&, const SemanticRep&) = default;
};

// Symbols of the extracted concepts, in extraction order. Throws EmptySR.
SemanticRep build_sr(const AgentProfile& agent, ActionId a, double threshold,
                     const SymbolTable& table);

enum class EmptyExtraction {
  kThrow,   // EmptySR
  kArgmax,  // fall back to the single most relevant concept
};

struct Extraction {
  std::vector<ConceptId> concepts;
  bool fell_back = false;
};

Extraction extract_with_policy(const AgentProfile& agent, ActionId a, double threshold,
                               EmptyExtraction policy);

// p(X_c = TRUE) = sum_a p_true(a, c) prior(a), per concept.
Vector concept_true_marginal(const AgentProfile& agent, const Dist& prior);

// Relative frequency f_c of extracting c: the marginal above, normalized.
Dist extraction_frequencies(const AgentProfile& agent, const Dist& prior);

struct BitBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// lower = -sum_c p(X_c = TRUE) log2 f_c, upper = sum_c p(X_c = TRUE) ceil(-log2 f_c).
BitBounds s1_bitlength_bounds(const AgentProfile& agent, const Dist& prior);

// Huffman code over f, indexed by symbol through `table`.
Codebook s1_codebook(const AgentProfile& agent, const Dist& prior, const SymbolTable& table);

// sum_c p(X_c = TRUE) len(s(c)): the expected SR length when every concept is
// sent independently with its relevance probability.
double s1_model_length(const AgentProfile& agent, const Dist& prior,
                       const Codebook& codebook, const SymbolTable& table);

struct SrLength {
  double bits = 0.0;
  // Prior mass of actions whose extraction was empty and fell back.
  double fallback_mass = 0.0;
};

// sum_a prior(a) sum_{c in extract(a)} len(s(c)).
SrLength s1_expected_sr_length(const AgentProfile& agent, const Dist& prior,
                               double threshold, const Codebook& codebook,
                               const SymbolTable& table,
                               EmptyExtraction policy = EmptyExtraction::kThrow);

}  // namespace snc

#endif  // SNC_SYSTEM1_HPP_
