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

#include "snc/dialogue.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "snc/codebook.hpp"

namespace snc {

void DialogueConfig::validate() const {
  if (k_max < 1) throw Error(Errc::kInvalidParams, "k_max must be at least 1");
  if (!(stop_confidence >= 0.0 && stop_confidence < 1.0)) {
    throw Error(Errc::kInvalidParams, "stop_confidence must lie in [0, 1)");
  }
  reasoning.validate();
}

DialogueState DialogueState::initial(const World& world) {
  return DialogueState{world.prior_actions, world.prior_concepts.weights(),
                       std::vector<bool>(static_cast<std::size_t>(world.num_concepts), true),
                       {}};
}

bool DialogueState::is_remaining(ConceptId c) const {
  return index(c) < remaining.size() && remaining[index(c)];
}

bool DialogueState::exhausted() const {
  for (bool r : remaining) {
    if (r) return false;
  }
  return true;
}

DialogueState update_priors(const DialogueState& state, ConceptId c_k, const Dist& rc2a_row) {
  if (index(c_k) >= state.remaining.size()) {
    throw Error(Errc::kUnknownConcept, "concept " + std::to_string(index(c_k)) + " is out of range");
  }
  if (!state.remaining[index(c_k)]) {
    throw Error(Errc::kConceptAlreadySent,
                "concept " + std::to_string(index(c_k)) + " was already sent");
  }
  if (rc2a_row.size() != state.prior_a.size()) {
    throw Error(Errc::kDimensionMismatch, "posterior does not cover the action set");
  }
  DialogueState next = state;
  next.prior_a = rc2a_row;
  next.remaining[index(c_k)] = false;
  next.prior_c(static_cast<Index>(index(c_k))) = 0.0;
  const double mass = next.prior_c.sum();
  if (mass > 0.0) {
    next.prior_c /= mass;
  } else if (!next.exhausted()) {
    // Every remaining concept had zero prior mass; spread evenly over them.
    for (std::size_t c = 0; c < next.remaining.size(); ++c) {
      next.prior_c(static_cast<Index>(c)) = next.remaining[c] ? 1.0 : 0.0;
    }
    next.prior_c /= next.prior_c.sum();
  }
  next.transcript.push_back({c_k, rc2a_row});
  return next;
}

Vector round_concept_marginal(const CondMatrix& ra2c, const Dist& prior_a) {
  if (ra2c.rows() != prior_a.size()) {
    throw Error(Errc::kDimensionMismatch, "rA2C rows and prior disagree");
  }
  return ra2c.values().transpose() * prior_a.weights();
}

BitBounds code_bounds(const Vector& p) {
  BitBounds b;
  for (Index i = 0; i < p.size(); ++i) {
    if (!(p(i) > 0.0)) continue;
    const double info = -std::log2(p(i));
    b.lower += p(i) * info;
    b.upper += p(i) * std::ceil(info);
  }
  return b;
}

BitBounds s2_bitlength_bounds(const std::vector<CondMatrix>& ra2c,
                              const std::vector<Dist>& prior_a) {
  if (ra2c.size() != prior_a.size()) {
    throw Error(Errc::kDimensionMismatch, "one action prior is needed per round");
  }
  BitBounds total;
  for (std::size_t k = 0; k < ra2c.size(); ++k) {
    const BitBounds b = code_bounds(round_concept_marginal(ra2c[k], prior_a[k]));
    total.lower += b.lower;
    total.upper += b.upper;
  }
  return total;
}

std::size_t DialogueReport::total_bits() const {
  std::size_t bits = 0;
  for (const auto& r : rounds) bits += r.sent_bits;
  return bits;
}

std::shared_ptr<const RoundArtifacts> DialogueCache::find(
    const std::vector<std::size_t>& key) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : it->second;
}

void DialogueCache::insert(const std::vector<std::size_t>& key,
                           std::shared_ptr<const RoundArtifacts> v) {
  std::lock_guard lock(mu_);
  entries_.emplace(key, std::move(v));
}

std::size_t DialogueCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

namespace {

// nullopt when no remaining concept carries evidence for the listener.
std::optional<RoundArtifacts> reason(const RelevanceModel& speaker_model,
                                     const RelevanceModel& listener_model,
                                     const DialogueState& state, const ReasoningParams& p) {
  std::optional<InitialContexts> init;
  try {
    init.emplace(init_contexts(speaker_model, listener_model, state.prior_a,
                               Dist(state.prior_c)));
  } catch (const Error& e) {
    if (e.code() == Errc::kZeroEvidence) return std::nullopt;
    throw;
  }
  ReasoningParams quiet = p;
  quiet.record_trace = false;
  SelfSnc engine(init->speaker, init->listener, quiet);
  ReasoningOutcome out = engine.run();
  return RoundArtifacts{std::move(out.ra2c), std::move(out.rc2a), engine.g_last(),
                        out.depth_used};
}

ConceptId choose_concept(const CondMatrix& ra2c, ActionId intended,
                         const DialogueState& state) {
  const auto a = static_cast<Index>(index(intended));
  std::optional<Index> best;
  for (Index c = 0; c < ra2c.cols(); ++c) {
    if (!state.remaining[static_cast<std::size_t>(c)]) continue;
    if (!best || ra2c(a, c) > ra2c(a, *best)) best = c;
  }
  return ConceptId{static_cast<std::size_t>(*best)};
}

struct Agents {
  const ReasoningView* speaker;
  const ReasoningView* listener;  // nullptr: same self-SNC serves both
};

DialogueReport dialogue(const Agents& agents, const World& world, ActionId intended,
                        const DialogueConfig& cfg, DialogueCache* cache) {
  cfg.validate();
  if (index(intended) >= static_cast<std::size_t>(world.num_actions)) {
    throw Error(Errc::kUnknownAction,
                "action " + std::to_string(index(intended)) + " is out of range");
  }
  DialogueReport report;
  report.intended = intended;
  DialogueState speaker_state = DialogueState::initial(world);
  DialogueState listener_state = speaker_state;
  std::vector<std::size_t> key;
  Dist last_posterior = speaker_state.prior_a;

  for (int k = 1; k <= cfg.k_max; ++k) {
    std::shared_ptr<const RoundArtifacts> spk = cache ? cache->find(key) : nullptr;
    if (!spk) {
      auto r = reason(agents.speaker->speaker_model, agents.speaker->listener_model,
                      speaker_state, cfg.reasoning);
      if (!r) {
        report.stalled = true;
        break;
      }
      spk = std::make_shared<const RoundArtifacts>(std::move(*r));
      if (cache) cache->insert(key, spk);
    }
    std::shared_ptr<const RoundArtifacts> lst = spk;
    if (agents.listener) {
      auto r = reason(agents.listener->speaker_model, agents.listener->listener_model,
                      listener_state, cfg.reasoning);
      if (!r) {
        report.stalled = true;
        break;
      }
      lst = std::make_shared<const RoundArtifacts>(std::move(*r));
    }

    const ConceptId sent = choose_concept(spk->ra2c, intended, speaker_state);
    const Dist posterior = lst->rc2a.row(static_cast<Index>(index(sent)));

    RoundRecord rec{sent, posterior, 0.0, Vector(), BitBounds{}};
    rec.posterior_of_intended = posterior[static_cast<Index>(index(intended))];
    rec.concept_marginal = round_concept_marginal(spk->ra2c, speaker_state.prior_a);
    rec.bounds = code_bounds(rec.concept_marginal);
    const SymbolId sym = world.symbols.symbol(sent);
    Vector by_symbol(rec.concept_marginal.size());
    for (Index c = 0; c < by_symbol.size(); ++c) {
      by_symbol(static_cast<Index>(index(world.symbols.symbol(ConceptId{static_cast<std::size_t>(c)})))) =
          rec.concept_marginal(c);
    }
    const Codebook sym_code = Codebook::huffman(by_symbol);
    rec.huffman_expected_bits = sym_code.expected_length(by_symbol);
    rec.sent_bits = sym_code.length(sym);
    rec.single_support = (rec.concept_marginal.array() > 0.0).count() == 1;
    rec.g_final = spk->g_final;
    rec.depth_used = spk->depth_used;

    report.sent_concepts.push_back(sent);
    report.posterior_trace.push_back(rec.posterior_of_intended);
    report.rounds.push_back(std::move(rec));
    last_posterior = posterior;

    speaker_state = update_priors(speaker_state, sent, spk->rc2a.row(static_cast<Index>(index(sent))));
    listener_state = agents.listener ? update_priors(listener_state, sent, posterior) : speaker_state;
    key.push_back(index(sent));

    if (k == cfg.k_max) break;
    if (posterior.weights().maxCoeff() >= 1.0 - cfg.stop_confidence) {
      report.early_stopped = true;
      break;
    }
    if (speaker_state.exhausted()) {
      report.exhausted = true;
      break;
    }
  }

  report.listener_guess = ActionId{static_cast<std::size_t>(last_posterior.argmax())};
  report.success = report.listener_guess == intended;
  return report;
}

}  // namespace

DialogueReport run_dialogue(const AgentProfile& speaker, const AgentProfile& listener,
                            const World& world, ActionId intended,
                            const DialogueConfig& cfg, DialogueCache* cache) {
  const ReasoningView view{speaker.relevance, listener.relevance};
  return dialogue(Agents{&view, nullptr}, world, intended, cfg, cache);
}

DialogueReport run_dialogue(const ReasoningView& speaker_view,
                            const ReasoningView& listener_view, const World& world,
                            ActionId intended, const DialogueConfig& cfg) {
  return dialogue(Agents{&speaker_view, &listener_view}, world, intended, cfg, nullptr);
}

bool check_theorem3(const DialogueReport& report, double slack) {
  const auto& t = report.posterior_trace;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] < t[i - 1] - slack) return false;
  }
  return true;
}

}  // namespace snc
