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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "snc/probcore.hpp"
#include "snc/rng.hpp"

namespace snc {
namespace {

Matrix mat(Index rows, Index cols, std::initializer_list<double> v) {
  Matrix m(rows, cols);
  auto it = v.begin();
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = *it++;
  }
  return m;
}

Vector random_simplex(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.uniform() + 1e-3;
  return v / v.sum();
}

TEST(Normalize, ScalesToUnitMass) {
  EXPECT_EQ(normalized(Vector{{2.0, 2.0, 0.0}}), (Vector{{0.5, 0.5, 0.0}}));
  EXPECT_EQ(normalized(Vector{{1.0}}), (Vector{{1.0}}));
  const Vector p{{0.3, 0.3, 0.4}};
  EXPECT_TRUE(normalized(p).isApprox(p, 1e-15));
  const Matrix m = normalized(mat(2, 2, {1, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(m(1, 0), 0.25);
}

TEST(Normalize, RejectsDegenerateInput) {
  try {
    normalized(Vector{{0.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kAllZero);
  }
  try {
    normalized(Vector{{1.0, -0.1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNegativeEntry);
  }
}

TEST(Normalize, IsIdempotent) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    Vector raw(7);
    for (Index i = 0; i < raw.size(); ++i) raw(i) = 10.0 * rng.uniform();
    const Vector once = normalized(raw);
    EXPECT_LE((normalized(once) - once).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CrossEntropy, HandValues) {
  const Matrix u = Matrix::Constant(2, 2, 0.25);
  EXPECT_NEAR(cross_entropy(u, u), std::log(4.0), 1e-15);
  EXPECT_NEAR(cross_entropy(mat(2, 2, {1, 0, 0, 0}), u), std::log(4.0), 1e-15);
  EXPECT_NEAR(cross_entropy(mat(2, 2, {0.5, 0.5, 0, 0}), u), std::log(4.0), 1e-15);
}

TEST(CrossEntropy, SupportMismatch) {
  try {
    cross_entropy(Vector{{0.5, 0.5}}, Vector{{1.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSupportMismatch);
  }
  // p = 0 where q = 0 is fine.
  EXPECT_NEAR(cross_entropy(Vector{{1.0, 0.0}}, Vector{{1.0, 0.0}}), 0.0, 0.0);
}

TEST(Entropy, HandValues) {
  EXPECT_EQ(entropy(Vector{{0.0, 1.0, 0.0}}), 0.0);
  EXPECT_NEAR(entropy(Vector{{0.5, 0.25, 0.25}}), 1.0397207708399179, 1e-12);
  EXPECT_NEAR(entropy_bits(Vector{{0.5, 0.25, 0.25}}), 1.5, 1e-12);
}

TEST(Entropy, UniformIsLogN) {
  for (Index n = 2; n <= 1000; ++n) {
    EXPECT_NEAR(entropy(Vector::Constant(n, 1.0 / static_cast<double>(n))),
                std::log(static_cast<double>(n)), 1e-12)
        << n;
  }
}

TEST(KlDivergence, NonnegativeWithEqualityOnlyAtEquality) {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const Vector p = random_simplex(5, rng);
    const Vector q = random_simplex(5, rng);
    EXPECT_GE(kl_divergence(p, q), 0.0);
    EXPECT_NEAR(kl_divergence(p, q), cross_entropy(p, q) - entropy(p), 1e-15);
    EXPECT_NEAR(kl_divergence(p, p), 0.0, 1e-9);
    if ((p - q).cwiseAbs().maxCoeff() > 1e-6) {
      EXPECT_GT(kl_divergence(p, q), 0.0);
    }
  }
}

TEST(Dist, ValidatesSimplex) {
  EXPECT_NO_THROW(Dist(Vector{{0.5, 0.5}}));
  EXPECT_THROW(Dist(Vector{{0.5, 0.6}}), Error);
  EXPECT_THROW(Dist(Vector{{1.5, -0.5}}), Error);
  EXPECT_THROW(Dist{Vector()}, Error);
  EXPECT_EQ(Dist::uniform(4)[2], 0.25);
  EXPECT_EQ(Dist::point_mass(3, 1).argmax(), 1);
  EXPECT_EQ(Dist(Vector{{0.4, 0.2, 0.4}}).argmax(), 0);
}

TEST(ContextMatrix, ValidatesJointDistribution) {
  EXPECT_NO_THROW(ContextMatrix(Matrix::Constant(2, 3, 1.0 / 6.0)));
  EXPECT_THROW(ContextMatrix(Matrix::Constant(2, 2, 0.3)), Error);
  EXPECT_THROW(CondMatrix(mat(2, 2, {0.5, 0.5, 0.2, 0.7})), Error);
  const CondMatrix c(mat(2, 2, {0.5, 0.5, 0.2, 0.8}));
  EXPECT_EQ(c.row(1).argmax(), 1);
}

TEST(Sample, PointMass) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    Rng rng(seed);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sample(Dist::point_mass(4, 2), rng), 2);
  }
}

TEST(Sample, UniformFrequencies) {
  Rng rng(5);
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(sample(Dist::uniform(4), rng))];
  double chi2 = 0.0;
  for (int c : counts) {
    EXPECT_NEAR(c / static_cast<double>(n), 0.25, 0.01);
    chi2 += (c - n / 4.0) * (c - n / 4.0) / (n / 4.0);
  }
  // 3 degrees of freedom, 0.999 quantile.
  EXPECT_LT(chi2, 16.27);
}

TEST(Rng, MatchesReferenceGenerator) {
  // First words of xoshiro256** seeded by SplitMix64(42), from an independent
  // big-integer implementation.
  Rng rng(42);
  EXPECT_EQ(rng.next_u64(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(rng.next_u64(), 0x6104d9866d113a7eULL);
  EXPECT_EQ(rng.next_u64(), 0xae17533239e499a1ULL);
  EXPECT_EQ(derive_seed(7, 3), 0x3ad3a9c34041426bULL);
}

TEST(Rng, EqualSeedsGiveEqualSequences) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    differs = differs || x != c.uniform();
  }
  EXPECT_TRUE(differs);
  EXPECT_NE(Rng::stream(1, 0).next_u64(), Rng::stream(1, 1).next_u64());
}

TEST(Rng, BelowIsUnbiased) {
  Rng rng(8);
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 30000; ++i) ++counts[rng.below(3)];
  for (int c : counts) EXPECT_NEAR(c / 30000.0, 1.0 / 3.0, 0.015);
}

TEST(Rng, BetaMoments) {
  Rng rng(13);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.beta(2.0, 5.0);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, 2.0 / 7.0, 0.003);
  EXPECT_NEAR(var, 10.0 / (49.0 * 8.0), 0.001);
}

}  // namespace
}  // namespace snc
