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

#include "snc/system1.hpp"

#include <cmath>
#include <string>

namespace snc {

namespace {

Index checked_action(const AgentProfile& agent, ActionId a) {
  const auto i = static_cast<Index>(index(a));
  if (i >= agent.relevance.num_actions()) {
    throw Error(Errc::kUnknownAction, "action " + std::to_string(i) + " is out of range");
  }
  return i;
}

Index checked_concept(const AgentProfile& agent, ConceptId c) {
  const auto j = static_cast<Index>(index(c));
  if (j >= agent.relevance.num_concepts()) {
    throw Error(Errc::kUnknownConcept, "concept " + std::to_string(j) + " is out of range");
  }
  return j;
}

}  // namespace

std::vector<ConceptId> extract_concepts(const AgentProfile& agent, ActionId a,
                                        double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(Errc::kInvalidParams, "extraction threshold must lie in (0, 1]");
  }
  const Index i = checked_action(agent, a);
  const Matrix& p = agent.relevance.p_true();
  std::vector<ConceptId> out;
  for (Index j = 0; j < p.cols(); ++j) {
    if (p(i, j) >= threshold) out.push_back(ConceptId{static_cast<std::size_t>(j)});
  }
  return out;
}

Dist a2c(const AgentProfile& agent, ActionId a) {
  const Index i = checked_action(agent, a);
  return Dist::from_weights(agent.relevance.p_true().row(i).transpose());
}

Dist c2a(const AgentProfile& agent, ConceptId c, const Dist& prior) {
  const Index j = checked_concept(agent, c);
  if (prior.size() != agent.relevance.num_actions()) {
    throw Error(Errc::kDimensionMismatch, "prior does not cover the action set");
  }
  const Vector joint = agent.relevance.p_true().col(j).cwiseProduct(prior.weights());
  if (!(joint.sum() > 0.0)) {
    throw Error(Errc::kZeroEvidence,
                "concept " + std::to_string(j) + " is irrelevant under the prior");
  }
  return Dist::from_weights(joint);
}

SemanticRep build_sr(const AgentProfile& agent, ActionId a, double threshold,
                     const SymbolTable& table) {
  const std::vector<ConceptId> concepts = extract_concepts(agent, a, threshold);
  if (concepts.empty()) {
    throw Error(Errc::kEmptySR,
                "no concept of action " + std::to_string(index(a)) + " reaches the threshold");
  }
  SemanticRep sr{a, {}};
  sr.symbols.reserve(concepts.size());
  for (ConceptId c : concepts) sr.symbols.push_back(table.symbol(c));
  return sr;
}

Extraction extract_with_policy(const AgentProfile& agent, ActionId a, double threshold,
                               EmptyExtraction policy) {
  Extraction out{extract_concepts(agent, a, threshold), false};
  if (!out.concepts.empty()) return out;
  if (policy == EmptyExtraction::kThrow) {
    throw Error(Errc::kEmptySR,
                "no concept of action " + std::to_string(index(a)) + " reaches the threshold");
  }
  out.concepts.push_back(ConceptId{static_cast<std::size_t>(a2c(agent, a).argmax())});
  out.fell_back = true;
  return out;
}

Vector concept_true_marginal(const AgentProfile& agent, const Dist& prior) {
  if (prior.size() != agent.relevance.num_actions()) {
    throw Error(Errc::kDimensionMismatch, "prior does not cover the action set");
  }
  return agent.relevance.p_true().transpose() * prior.weights();
}

Dist extraction_frequencies(const AgentProfile& agent, const Dist& prior) {
  return Dist::from_weights(concept_true_marginal(agent, prior));
}

BitBounds s1_bitlength_bounds(const AgentProfile& agent, const Dist& prior) {
  const Vector p_true = concept_true_marginal(agent, prior);
  const Dist f = Dist::from_weights(p_true);
  BitBounds b;
  for (Index c = 0; c < p_true.size(); ++c) {
    if (p_true(c) == 0.0) continue;
    const double info = -std::log2(f[c]);
    b.lower += p_true(c) * info;
    b.upper += p_true(c) * std::ceil(info);
  }
  return b;
}

Codebook s1_codebook(const AgentProfile& agent, const Dist& prior, const SymbolTable& table) {
  const Dist f = extraction_frequencies(agent, prior);
  Vector by_symbol(f.size());
  for (Index c = 0; c < f.size(); ++c) {
    by_symbol(static_cast<Index>(index(table.symbol(ConceptId{static_cast<std::size_t>(c)})))) = f[c];
  }
  return Codebook::huffman(by_symbol);
}

double s1_model_length(const AgentProfile& agent, const Dist& prior,
                       const Codebook& codebook, const SymbolTable& table) {
  const Vector p_true = concept_true_marginal(agent, prior);
  double bits = 0.0;
  for (Index c = 0; c < p_true.size(); ++c) {
    bits += p_true(c) *
            static_cast<double>(codebook.length(table.symbol(ConceptId{static_cast<std::size_t>(c)})));
  }
  return bits;
}

SrLength s1_expected_sr_length(const AgentProfile& agent, const Dist& prior,
                               double threshold, const Codebook& codebook,
                               const SymbolTable& table, EmptyExtraction policy) {
  if (prior.size() != agent.relevance.num_actions()) {
    throw Error(Errc::kDimensionMismatch, "prior does not cover the action set");
  }
  SrLength out;
  for (Index a = 0; a < prior.size(); ++a) {
    if (prior[a] == 0.0) continue;
    const Extraction e =
        extract_with_policy(agent, ActionId{static_cast<std::size_t>(a)}, threshold, policy);
    double bits = 0.0;
    for (ConceptId c : e.concepts) bits += static_cast<double>(codebook.length(table.symbol(c)));
    out.bits += prior[a] * bits;
    if (e.fell_back) out.fallback_mass += prior[a];
  }
  return out;
}

}  // namespace snc
