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

#ifndef SNC_PROBCORE_HPP_
#define SNC_PROBCORE_HPP_

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "snc/error.hpp"
#include "snc/rng.hpp"

namespace snc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Tolerance on "sums to one" when a distribution is constructed.
inline constexpr double kSimplexTolerance = 1e-9;

// x * log(y) with the convention 0 * log(anything) = 0.
template <typename Scalar>
Scalar xlogy(Scalar x, Scalar y) {
  return x == Scalar(0) ? Scalar(0) : x * std::log(y);
}

// Scales a nonnegative vector or matrix to unit total mass.
template <typename Derived>
typename Derived::PlainObject normalized(const Eigen::DenseBase<Derived>& raw) {
  using Scalar = typename Derived::Scalar;
  Scalar total(0);
  for (Index j = 0; j < raw.cols(); ++j) {
    for (Index i = 0; i < raw.rows(); ++i) {
      const Scalar v = raw(i, j);
      if (!(v >= Scalar(0))) {
        throw Error(Errc::kNegativeEntry,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is negative or NaN");
      }
      total += v;
    }
  }
  if (!(total > Scalar(0))) throw Error(Errc::kAllZero, "no positive entry");
  typename Derived::PlainObject out = raw.derived() / total;
  return out;
}

// Shannon entropy in nats; -sum p log p.
template <typename Derived>
typename Derived::Scalar entropy(const Eigen::DenseBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  Scalar h(0);
  for (Index j = 0; j < p.cols(); ++j) {
    for (Index i = 0; i < p.rows(); ++i) h -= xlogy(p(i, j), p(i, j));
  }
  return h;
}

// Cross entropy in nats; -sum p log q. q must cover the support of p.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar cross_entropy(const Eigen::DenseBase<DerivedP>& p,
                                        const Eigen::DenseBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw Error(Errc::kDimensionMismatch, "cross_entropy operands differ in shape");
  }
  Scalar h(0);
  for (Index j = 0; j < p.cols(); ++j) {
    for (Index i = 0; i < p.rows(); ++i) {
      const Scalar pi = p(i, j);
      if (pi == Scalar(0)) continue;
      const Scalar qi = q(i, j);
      if (!(qi > Scalar(0))) {
        throw Error(Errc::kSupportMismatch,
                    "q vanishes at (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") where p > 0");
      }
      h -= pi * std::log(qi);
    }
  }
  return h;
}

// KL(p || q) in nats.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar kl_divergence(const Eigen::DenseBase<DerivedP>& p,
                                        const Eigen::DenseBase<DerivedQ>& q) {
  return cross_entropy(p, q) - entropy(p);
}

template <typename Derived>
typename Derived::Scalar entropy_bits(const Eigen::DenseBase<Derived>& p) {
  return entropy(p) / std::numbers::ln2_v<typename Derived::Scalar>;
}

// A probability vector over an indexed finite set.
class Dist {
 public:
  // Validates the simplex invariants without rescaling.
  explicit Dist(Vector weights);

  // normalized(raw), wrapped.
  static Dist from_weights(const Vector& raw);
  static Dist uniform(Index n);
  static Dist point_mass(Index n, Index at);

  Index size() const noexcept { return w_.size(); }
  double operator[](Index i) const { return w_(i); }
  const Vector& weights() const noexcept { return w_; }

  Index argmax() const;

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  Vector w_;
};

// A joint distribution over actions x concepts (rows x columns).
class ContextMatrix {
 public:
  explicit ContextMatrix(Matrix entries);

  static ContextMatrix from_weights(const Matrix& raw);

  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }
  double operator()(Index a, Index c) const { return m_(a, c); }
  const Matrix& values() const noexcept { return m_; }

  friend bool operator==(const ContextMatrix&, const ContextMatrix&) = default;

 private:
  Matrix m_;
};

// Row-stochastic matrix: row i is a distribution conditioned on i.
class CondMatrix {
 public:
  explicit CondMatrix(Matrix entries);

  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Matrix& values() const noexcept { return m_; }
  Dist row(Index i) const { return Dist(m_.row(i).transpose()); }

 private:
  Matrix m_;
};

// Inverse-CDF draw of an index distributed as d.
Index sample(const Dist& d, Rng& rng);

}  // namespace snc

#endif  // SNC_PROBCORE_HPP_
