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

#ifndef SNC_REASONING_HPP_
#define SNC_REASONING_HPP_

#include <vector>

#include "snc/ids.hpp"
#include "snc/probcore.hpp"
#include "snc/world.hpp"

namespace snc {

// How the individual contexts are renormalized after each power update.
enum class ContextUpdate {
  // S and L are rescaled to unit total mass (the plain alternating
  // minimization over all joint distributions).
  kJoint,
  // S keeps the action marginal it started with and L keeps its concept
  // marginal: S(a, .) = rA2C(. | a) p_A(a) and L(., c) = rC2A(. | c) p_C(c).
  // This is the same block minimization restricted to joint distributions
  // with those marginals.
  kPriorAnchored,
};

struct ReasoningParams {
  double alpha = 1.5;
  double beta = 1.5;
  double lambda = 0.5;
  int max_depth = 200;
  // Used for the `converged` flag, and as a stopping rule when
  // stop_at_tolerance is set.
  double g_tolerance = 1e-12;
  bool stop_at_tolerance = false;
  ContextUpdate update = ContextUpdate::kPriorAnchored;
  // Record G after every half-step. Costs two extra exp() per cell.
  bool record_trace = true;

  // alpha, beta in [1, 4]; lambda in (0, 1); max_depth >= 1; g_tolerance > 0.
  void validate() const;
};

struct InitialContexts {
  ContextMatrix speaker;
  ContextMatrix listener;
  // Concepts with no relevance mass under the prior; their listener column
  // is identically zero.
  std::vector<ConceptId> silent_concepts;
};

// Boundary contexts at depth zero. The speaker context is the A2C of the
// speaker's model weighted by prior_a; the listener context is the posterior
// p(a | X_c = TRUE) of the listener's model under prior_a, weighted by prior_c.
// Both are normalized to joint distributions.
InitialContexts init_contexts(const RelevanceModel& speaker,
                              const RelevanceModel& listener,
                              const Dist& prior_a, const Dist& prior_c);

struct StepResult {
  ContextMatrix m1;
  ContextMatrix speaker;
  ContextMatrix m2;
  ContextMatrix listener;
};

// One depth of the recursion: M1 = lam S + (1 - lam) L, S' ~ M1^alpha,
// M2 = lam S' + (1 - lam) L, L' ~ M2^beta. Under kPriorAnchored, S' keeps
// the row masses of S and L' keeps the column masses of L.
StepResult reasoning_step(const ContextMatrix& s, const ContextMatrix& l,
                          const ReasoningParams& p);

// lam [H(S, M) - H(S) / alpha] + (1 - lam) [H(L, M) - H(L) / beta], nats.
double objective_g(const ContextMatrix& s, const ContextMatrix& l,
                   const ContextMatrix& m, const ReasoningParams& p);

struct ReasoningOutcome {
  ContextMatrix mutual;        // M2 at the last depth
  ContextMatrix speaker_ctx;   // S at the last depth
  ContextMatrix listener_ctx;  // L at the last depth
  CondMatrix ra2c;             // |A| x |C|, row a = rA2C(. | a)
  CondMatrix rc2a;             // |C| x |A|, row c = rC2A(. | c)
  // G at depth zero, then after every speaker and listener half-step.
  std::vector<double> g_trace;
  int depth_used = 0;
  bool converged = false;
  // Rows/columns with no mass at all; their conditional is uniform.
  std::vector<ActionId> uniform_actions;
  std::vector<ConceptId> uniform_concepts;
};

// Log-domain state of one self-SNC run; exposes every intermediate context.
class SelfSnc {
 public:
  SelfSnc(const ContextMatrix& s0, const ContextMatrix& l0, const ReasoningParams& p);

  void step();

  int depth() const noexcept { return depth_; }
  const Eigen::ArrayXXd& log_speaker() const noexcept { return log_s_; }
  const Eigen::ArrayXXd& log_listener() const noexcept { return log_l_; }
  const Eigen::ArrayXXd& log_m1() const noexcept { return log_m1_; }
  const Eigen::ArrayXXd& log_m2() const noexcept { return log_m2_; }

  ContextMatrix speaker() const;
  ContextMatrix listener() const;
  ContextMatrix m1() const;
  ContextMatrix m2() const;

  const std::vector<double>& g_trace() const noexcept { return g_trace_; }
  // G after the most recent listener half-step (depth zero: initial G).
  double g_last() const noexcept { return g_last_; }

  // Runs to max_depth, or to |dG| < g_tolerance when stop_at_tolerance.
  ReasoningOutcome run();
  ReasoningOutcome outcome(bool converged) const;

 private:
  double g(const Eigen::ArrayXXd& log_m) const;

  ReasoningParams p_;
  Eigen::ArrayXXd log_s_, log_l_, log_m1_, log_m2_;
  Eigen::ArrayXd log_row_mass_, log_col_mass_;
  std::vector<double> g_trace_;
  double g_last_ = 0.0;
  double g_prev_ = 0.0;
  int depth_ = 0;
};

// init_contexts followed by SelfSnc::run.
ReasoningOutcome run_self_snc(const RelevanceModel& speaker,
                              const RelevanceModel& listener, const Dist& prior_a,
                              const Dist& prior_c, const ReasoningParams& p);

// True when every entry of m above `floor` lies within rel_tol of their
// common maximum.
bool check_lemma1(const ContextMatrix& m, double rel_tol, double floor = 1e-8);

}  // namespace snc

#endif  // SNC_REASONING_HPP_
