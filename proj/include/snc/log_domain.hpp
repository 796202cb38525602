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

#ifndef SNC_LOG_DOMAIN_HPP_
#define SNC_LOG_DOMAIN_HPP_

// Log-domain kernels for the context recursion. Sharpening by powers > 1
// drives most entries below the smallest double within a few dozen steps, so
// contexts are carried as elementwise logs with -inf standing for exact zero.

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace snc::logd {

template <typename Scalar>
inline constexpr Scalar kNegInf = -std::numeric_limits<Scalar>::infinity();

// Log-ratios below this are clamped before exponentiating next to a term of
// order one: exp(kFloor) vanishes in the sum at double precision, and the
// clamp keeps exp() away from subnormal results.
template <typename Scalar>
inline constexpr Scalar kFloor = Scalar(-80);

// Elementwise log of a nonnegative array; zeros map to -inf.
template <typename Derived>
auto log_of(const Eigen::ArrayBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return (x > Scalar(0)).select(x.log(), kNegInf<Scalar>);
}

// Elementwise exp with -inf mapping to exactly zero.
template <typename Derived>
auto exp_of(const Eigen::ArrayBase<Derived>& x) {
  return x.exp();
}

// log(w * exp(x) + (1 - w) * exp(y)), elementwise, for 0 < w < 1.
template <typename DerivedX, typename DerivedY>
typename DerivedX::PlainObject log_mix(const Eigen::ArrayBase<DerivedX>& log_x,
                                       const Eigen::ArrayBase<DerivedY>& log_y,
                                       typename DerivedX::Scalar w) {
  using Scalar = typename DerivedX::Scalar;
  using Plain = typename DerivedX::PlainObject;
  const Plain hi = log_x.max(log_y.derived());
  const auto dead = hi == kNegInf<Scalar>;
  const Plain gap = dead.select(Scalar(0), (log_x.min(log_y.derived()) - hi).max(kFloor<Scalar>));
  const Plain w_hi = (log_x >= log_y.derived())
                         .select(Plain::Constant(hi.rows(), hi.cols(), w),
                                 Plain::Constant(hi.rows(), hi.cols(), Scalar(1) - w));
  const Plain mixed = hi + (w_hi + (Scalar(1) - w_hi) * gap.exp()).log();
  return dead.select(kNegInf<Scalar>, mixed);
}

// log(sum(exp(x))) over a vector-shaped expression; -inf when every entry is.
template <typename Derived>
typename Derived::Scalar log_sum_exp(const Eigen::ArrayBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar hi = x.maxCoeff();
  if (hi == kNegInf<Scalar>) return hi;
  return hi + std::log((x - hi).exp().sum());
}

// In-place: subtract each row's log-sum-exp, then add log_mass(row). Rows
// whose entries are all -inf are left untouched.
template <typename Derived, typename DerivedMass>
void normalize_rows_to(Eigen::ArrayBase<Derived>& x,
                       const Eigen::ArrayBase<DerivedMass>& log_mass) {
  using Scalar = typename Derived::Scalar;
  using Col = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  const Col hi = x.rowwise().maxCoeff();
  const auto dead = hi == kNegInf<Scalar>;
  const Col shift = dead.select(Scalar(0), hi);
  const Col lse = shift + (x.colwise() - shift).max(kFloor<Scalar>).exp().rowwise().sum().log();
  const Col adjust = dead.select(Scalar(0), log_mass.derived() - lse);
  x.derived().colwise() += adjust;
}

template <typename Derived, typename DerivedMass>
void normalize_cols_to(Eigen::ArrayBase<Derived>& x,
                       const Eigen::ArrayBase<DerivedMass>& log_mass) {
  using Scalar = typename Derived::Scalar;
  using Row = Eigen::Array<Scalar, 1, Eigen::Dynamic>;
  const Row hi = x.colwise().maxCoeff();
  const auto dead = hi == kNegInf<Scalar>;
  const Row shift = dead.select(Scalar(0), hi);
  const Row lse = shift + (x.rowwise() - shift).max(kFloor<Scalar>).exp().colwise().sum().log();
  const Row adjust = dead.select(Scalar(0), log_mass.derived().transpose() - lse);
  x.derived().rowwise() += adjust;
}

// Log row masses (log of row sums of exp(x)).
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> row_log_mass(
    const Eigen::ArrayBase<Derived>& x) {
  Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) out(i) = log_sum_exp(x.row(i));
  return out;
}

template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> col_log_mass(
    const Eigen::ArrayBase<Derived>& x) {
  Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> out(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) out(j) = log_sum_exp(x.col(j));
  return out;
}

// -sum p log q with p = exp(log_p), skipping cells where p is exactly zero.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar cross_entropy_log(const Eigen::ArrayBase<DerivedP>& log_p,
                                            const Eigen::ArrayBase<DerivedQ>& log_q) {
  using Scalar = typename DerivedP::Scalar;
  Scalar h(0);
  for (Eigen::Index j = 0; j < log_p.cols(); ++j) {
    for (Eigen::Index i = 0; i < log_p.rows(); ++i) {
      const Scalar p = std::exp(log_p(i, j));
      if (p == Scalar(0)) continue;
      h -= p * log_q(i, j);
    }
  }
  return h;
}

}  // namespace snc::logd

#endif  // SNC_LOG_DOMAIN_HPP_
