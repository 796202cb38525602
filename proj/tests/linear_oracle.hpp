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

#ifndef SNC_TESTS_LINEAR_ORACLE_HPP_
#define SNC_TESTS_LINEAR_ORACLE_HPP_

#include <cmath>

#include "snc/probcore.hpp"
#include "snc/reasoning.hpp"

namespace snc::testing {

// Straight linear-domain transcription of the recursion, used as an oracle.
struct Oracle {
  Matrix s, l, m1, m2;
  Vector row_mass;
  Eigen::RowVectorXd col_mass;
  double alpha, beta, lambda;
  bool anchored;

  Oracle(const Matrix& s0, const Matrix& l0, const ReasoningParams& p)
      : s(s0), l(l0), row_mass(s0.rowwise().sum()), col_mass(l0.colwise().sum()),
        alpha(p.alpha), beta(p.beta), lambda(p.lambda),
        anchored(p.update == ContextUpdate::kPriorAnchored) {}

  void step() {
    const Index r = s.rows(), c = s.cols();
    m1 = Matrix(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m1(i, j) = lambda * s(i, j) + (1 - lambda) * l(i, j);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) s(i, j) = std::pow(m1(i, j), alpha);
    if (anchored) {
      for (Index i = 0; i < r; ++i) {
        double z = 0;
        for (Index j = 0; j < c; ++j) z += s(i, j);
        for (Index j = 0; j < c; ++j) s(i, j) = z > 0 ? s(i, j) / z * row_mass(i) : 0.0;
      }
    } else {
      double z = 0;
      for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) z += s(i, j);
      s /= z;
    }
    m2 = Matrix(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m2(i, j) = lambda * s(i, j) + (1 - lambda) * l(i, j);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) l(i, j) = std::pow(m2(i, j), beta);
    if (anchored) {
      for (Index j = 0; j < c; ++j) {
        double z = 0;
        for (Index i = 0; i < r; ++i) z += l(i, j);
        for (Index i = 0; i < r; ++i) l(i, j) = z > 0 ? l(i, j) / z * col_mass(j) : 0.0;
      }
    } else {
      double z = 0;
      for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) z += l(i, j);
      l /= z;
    }
  }
};

}  // namespace snc::testing

#endif  // SNC_TESTS_LINEAR_ORACLE_HPP_
