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

#include "snc/probcore.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace snc {

namespace {

template <typename Derived>
void check_unit_interval(const Eigen::DenseBase<Derived>& x, const char* what) {
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      const double v = x(i, j);
      if (!(v >= 0.0 && v <= 1.0 + kSimplexTolerance)) {
        throw Error(Errc::kOutOfRange, std::string(what) + " entry (" +
                                           std::to_string(i) + ", " +
                                           std::to_string(j) + ") = " +
                                           std::to_string(v) + " outside [0, 1]");
      }
    }
  }
}

void check_mass(double total, const std::string& what) {
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw Error(Errc::kNotNormalized,
                what + " sums to " + std::to_string(total) + ", expected 1");
  }
}

}  // namespace

Dist::Dist(Vector weights) : w_(std::move(weights)) {
  if (w_.size() == 0) throw Error(Errc::kInvalidParams, "empty distribution");
  check_unit_interval(w_, "distribution");
  check_mass(w_.sum(), "distribution");
}

Dist Dist::from_weights(const Vector& raw) { return Dist(normalized(raw)); }

Dist Dist::uniform(Index n) {
  if (n <= 0) throw Error(Errc::kInvalidParams, "uniform over an empty set");
  return Dist(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

Dist Dist::point_mass(Index n, Index at) {
  if (at < 0 || at >= n) throw Error(Errc::kOutOfRange, "point mass index");
  Vector w = Vector::Zero(n);
  w(at) = 1.0;
  return Dist(std::move(w));
}

Index Dist::argmax() const {
  Index best = 0;
  for (Index i = 1; i < w_.size(); ++i) {
    if (w_(i) > w_(best)) best = i;
  }
  return best;
}

ContextMatrix::ContextMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.size() == 0) throw Error(Errc::kInvalidParams, "empty context matrix");
  check_unit_interval(m_, "context matrix");
  check_mass(m_.sum(), "context matrix");
}

ContextMatrix ContextMatrix::from_weights(const Matrix& raw) {
  return ContextMatrix(normalized(raw));
}

CondMatrix::CondMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.size() == 0) throw Error(Errc::kInvalidParams, "empty conditional matrix");
  check_unit_interval(m_, "conditional matrix");
  for (Index i = 0; i < m_.rows(); ++i) {
    check_mass(m_.row(i).sum(), "conditional row " + std::to_string(i));
  }
}

Index sample(const Dist& d, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  Index last_positive = 0;
  for (Index i = 0; i < d.size(); ++i) {
    if (d[i] <= 0.0) continue;
    cumulative += d[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  // u landed in the rounding gap above the accumulated mass.
  return last_positive;
}

}  // namespace snc
