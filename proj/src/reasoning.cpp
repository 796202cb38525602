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

#include "snc/reasoning.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "snc/log_domain.hpp"

namespace snc {

namespace {

using Array2 = Eigen::ArrayXXd;
constexpr double kNegInf = logd::kNegInf<double>;

Matrix to_linear(const Array2& log_x) { return log_x.exp().matrix(); }

// Row-wise softmax of `scores`; rows that are entirely -inf become uniform
// and are reported through `uniform_rows`.
template <typename Id>
Matrix softmax_rows(const Array2& scores, std::vector<Id>& uniform_rows) {
  Matrix out(scores.rows(), scores.cols());
  for (Index i = 0; i < scores.rows(); ++i) {
    const double lse = logd::log_sum_exp(scores.row(i));
    if (lse == kNegInf) {
      out.row(i).setConstant(1.0 / static_cast<double>(scores.cols()));
      uniform_rows.push_back(Id{static_cast<std::size_t>(i)});
      continue;
    }
    out.row(i) = (scores.row(i) - lse).exp().matrix();
  }
  return out;
}

}  // namespace

void ReasoningParams::validate() const {
  if (!(alpha >= 1.0 && alpha <= 4.0) || !(beta >= 1.0 && beta <= 4.0)) {
    throw Error(Errc::kInvalidParams, "alpha and beta must lie in [1, 4]");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(Errc::kInvalidParams, "lambda must lie in (0, 1)");
  }
  if (max_depth < 1) throw Error(Errc::kInvalidParams, "max_depth must be at least 1");
  if (!(g_tolerance > 0.0)) throw Error(Errc::kInvalidParams, "g_tolerance must be positive");
}

InitialContexts init_contexts(const RelevanceModel& speaker,
                              const RelevanceModel& listener, const Dist& prior_a,
                              const Dist& prior_c) {
  const Index na = speaker.num_actions();
  const Index nc = speaker.num_concepts();
  if (listener.num_actions() != na || listener.num_concepts() != nc ||
      prior_a.size() != na || prior_c.size() != nc) {
    throw Error(Errc::kDimensionMismatch, "speaker, listener and priors disagree in shape");
  }
  const Matrix& ps = speaker.p_true();
  const Matrix& pl = listener.p_true();
  const Vector& pa = prior_a.weights();
  const Vector& pc = prior_c.weights();

  // Speaker: A2C(c | a) p_A(a).
  Matrix s_raw = ps.array().colwise() / ps.rowwise().sum().array();
  s_raw.array().colwise() *= pa.array();

  // Listener: p(a | X_c = TRUE) p_C(c), Bayes over the listener's model.
  Matrix joint = pl.array().colwise() * pa.array();
  const Eigen::RowVectorXd evidence = joint.colwise().sum();
  std::vector<ConceptId> silent;
  Matrix l_raw(na, nc);
  for (Index c = 0; c < nc; ++c) {
    if (evidence(c) > 0.0) {
      l_raw.col(c) = joint.col(c) / evidence(c) * pc(c);
    } else {
      l_raw.col(c).setZero();
      silent.push_back(ConceptId{static_cast<std::size_t>(c)});
    }
  }
  if (!(l_raw.sum() > 0.0)) {
    throw Error(Errc::kZeroEvidence, "no concept with prior mass is relevant to any action");
  }
  return InitialContexts{ContextMatrix::from_weights(s_raw),
                         ContextMatrix::from_weights(l_raw), std::move(silent)};
}

SelfSnc::SelfSnc(const ContextMatrix& s0, const ContextMatrix& l0, const ReasoningParams& p)
    : p_(p),
      log_s_(logd::log_of(s0.values().array())),
      log_l_(logd::log_of(l0.values().array())) {
  if (s0.rows() != l0.rows() || s0.cols() != l0.cols()) {
    throw Error(Errc::kDimensionMismatch, "speaker and listener contexts differ in shape");
  }
  log_row_mass_ = logd::row_log_mass(log_s_);
  log_col_mass_ = logd::col_log_mass(log_l_);
  log_m1_ = logd::log_mix(log_s_, log_l_, p_.lambda);
  log_m2_ = log_m1_;
  g_last_ = g(log_m1_);
  g_prev_ = g_last_;
  if (p_.record_trace) g_trace_.push_back(g_last_);
}

double SelfSnc::g(const Array2& log_m) const {
  double speaker_term = 0.0;
  double listener_term = 0.0;
  for (Index j = 0; j < log_m.cols(); ++j) {
    for (Index i = 0; i < log_m.rows(); ++i) {
      const double s = std::exp(log_s_(i, j));
      if (s > 0.0) speaker_term += s * (log_s_(i, j) / p_.alpha - log_m(i, j));
      const double l = std::exp(log_l_(i, j));
      if (l > 0.0) listener_term += l * (log_l_(i, j) / p_.beta - log_m(i, j));
    }
  }
  return p_.lambda * speaker_term + (1.0 - p_.lambda) * listener_term;
}

void SelfSnc::step() {
  const bool anchored = p_.update == ContextUpdate::kPriorAnchored;
  const bool want_g = p_.record_trace || p_.stop_at_tolerance;

  log_m1_ = logd::log_mix(log_s_, log_l_, p_.lambda);
  log_s_ = p_.alpha * log_m1_;
  if (anchored) {
    logd::normalize_rows_to(log_s_, log_row_mass_);
  } else {
    log_s_ -= logd::log_sum_exp(log_s_);
  }
  if (p_.record_trace) g_trace_.push_back(g(log_m1_));

  log_m2_ = logd::log_mix(log_s_, log_l_, p_.lambda);
  log_l_ = p_.beta * log_m2_;
  if (anchored) {
    logd::normalize_cols_to(log_l_, log_col_mass_);
  } else {
    log_l_ -= logd::log_sum_exp(log_l_);
  }
  ++depth_;
  if (want_g || depth_ + 1 >= p_.max_depth) {
    g_prev_ = g_last_;
    g_last_ = g(log_m2_);
    if (p_.record_trace) g_trace_.push_back(g_last_);
  }
}

ContextMatrix SelfSnc::speaker() const { return ContextMatrix(to_linear(log_s_)); }
ContextMatrix SelfSnc::listener() const { return ContextMatrix(to_linear(log_l_)); }
ContextMatrix SelfSnc::m1() const { return ContextMatrix(to_linear(log_m1_)); }
ContextMatrix SelfSnc::m2() const { return ContextMatrix(to_linear(log_m2_)); }

ReasoningOutcome SelfSnc::run() {
  bool converged = false;
  while (depth_ < p_.max_depth) {
    step();
    converged = depth_ >= 2 && std::abs(g_last_ - g_prev_) < p_.g_tolerance;
    if (converged && p_.stop_at_tolerance) break;
  }
  return outcome(converged);
}

ReasoningOutcome SelfSnc::outcome(bool converged) const {
  std::vector<ActionId> uniform_actions;
  std::vector<ConceptId> uniform_concepts;
  Matrix ra2c = softmax_rows(Array2(p_.alpha * log_m1_), uniform_actions);
  Matrix rc2a = softmax_rows(Array2(p_.beta * log_m2_.transpose()), uniform_concepts);
  return ReasoningOutcome{m2(),
                          speaker(),
                          listener(),
                          CondMatrix(std::move(ra2c)),
                          CondMatrix(std::move(rc2a)),
                          g_trace_,
                          depth_,
                          converged,
                          std::move(uniform_actions),
                          std::move(uniform_concepts)};
}

StepResult reasoning_step(const ContextMatrix& s, const ContextMatrix& l,
                          const ReasoningParams& p) {
  p.validate();
  ReasoningParams quiet = p;
  quiet.record_trace = false;
  quiet.stop_at_tolerance = false;
  SelfSnc engine(s, l, quiet);
  engine.step();
  return StepResult{engine.m1(), engine.speaker(), engine.m2(), engine.listener()};
}

double objective_g(const ContextMatrix& s, const ContextMatrix& l,
                   const ContextMatrix& m, const ReasoningParams& p) {
  const double speaker_term =
      cross_entropy(s.values(), m.values()) - entropy(s.values()) / p.alpha;
  const double listener_term =
      cross_entropy(l.values(), m.values()) - entropy(l.values()) / p.beta;
  return p.lambda * speaker_term + (1.0 - p.lambda) * listener_term;
}

ReasoningOutcome run_self_snc(const RelevanceModel& speaker,
                              const RelevanceModel& listener, const Dist& prior_a,
                              const Dist& prior_c, const ReasoningParams& p) {
  p.validate();
  InitialContexts init = init_contexts(speaker, listener, prior_a, prior_c);
  return SelfSnc(init.speaker, init.listener, p).run();
}

bool check_lemma1(const ContextMatrix& m, double rel_tol, double floor) {
  const double top = m.values().maxCoeff();
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const double v = m(i, j);
      if (v > floor && std::abs(v - top) > rel_tol * top) return false;
    }
  }
  return true;
}

}  // namespace snc
