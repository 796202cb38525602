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
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "snc/world.hpp"

namespace snc {
namespace {

// P(X >= 0.9) for X ~ Beta(0.1, 0.1), by symmetry P(X <= 0.1). With x = t^10
// the integrand x^-0.9 (1 - x)^-0.9 dx becomes 10 (1 - t^10)^-0.9 dt, which
// is smooth on [0, 0.1^0.1]; composite Simpson on that.
double beta_tail_oracle() {
  const double upper = std::pow(0.1, 0.1);
  const int n = 2000;
  const double h = upper / n;
  auto f = [](double t) { return 10.0 * std::pow(1.0 - std::pow(t, 10.0), -0.9); };
  double s = f(0.0) + f(upper);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  const double integral = s * h / 3.0;
  const double beta_fn = std::tgamma(0.1) * std::tgamma(0.1) / std::tgamma(0.2);
  return integral / beta_fn;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("snc_test_" + name);
}

TEST(GenWorld, ShapeAndRange) {
  Rng rng(1);
  const WorldInstance w = gen_world(100, 100, {}, rng);
  EXPECT_EQ(w.world.num_actions, 100);
  EXPECT_EQ(w.world.num_concepts, 100);
  const Matrix& p = w.agent().relevance.p_true();
  EXPECT_EQ(p.rows(), 100);
  EXPECT_EQ(p.cols(), 100);
  EXPECT_GE(p.minCoeff(), 0.0);
  EXPECT_LE(p.maxCoeff(), 1.0);
  EXPECT_EQ(w.world.prior_actions, Dist::uniform(100));
  EXPECT_EQ(w.world.symbols, SymbolTable::identity(100));
}

TEST(GenWorld, BetaOneOneIsUniform) {
  Rng rng(2);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = gen_world(1, 1, {1.0, 1.0}, rng).agent().relevance.p_true()(0, 0);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
    sum += x;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(GenWorld, TailMassMatchesBetaCdf) {
  const double oracle = beta_tail_oracle();
  EXPECT_NEAR(oracle, 0.4064, 1e-3);
  Rng rng(3);
  long hits = 0, total = 0;
  while (total < 100000) {
    const Matrix p = gen_world(10, 20, {0.1, 0.1}, rng).agent().relevance.p_true();
    hits += (p.array() >= 0.9).count();
    total += p.size();
  }
  EXPECT_NEAR(static_cast<double>(hits) / static_cast<double>(total), oracle, 0.03);
}

TEST(GenWorld, DeterministicPerSeed) {
  Rng a(77), b(77);
  EXPECT_EQ(gen_world(10, 12, {}, a), gen_world(10, 12, {}, b));
}

TEST(GenWorld, EveryModelIsValid) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const WorldInstance w = gen_world(5, 4, {0.1, 0.1}, rng);
    const Matrix& p = w.agent().relevance.p_true();
    ASSERT_GE(p.minCoeff(), 0.0);
    ASSERT_LE(p.maxCoeff(), 1.0);
    for (Index a = 0; a < p.rows(); ++a) ASSERT_GT(p.row(a).maxCoeff(), 0.0);
  }
}

TEST(GenWorld, RejectsBadParameters) {
  Rng rng(5);
  EXPECT_THROW(gen_world(0, 3, {}, rng), Error);
  EXPECT_THROW(gen_world(3, 3, {0.0, 1.0}, rng), Error);
}

TEST(Rabbit, Rows) {
  const WorldInstance w = rabbit_fixture();
  const Matrix& p = w.agent().relevance.p_true();
  EXPECT_EQ(p.row(0), (Eigen::RowVector3d{1, 0, 0}));
  EXPECT_EQ(p.row(1), (Eigen::RowVector3d{1, 1, 0}));
  EXPECT_EQ(p.row(2), (Eigen::RowVector3d{1, 1, 1}));
  EXPECT_EQ(w.world.prior_actions, Dist::uniform(3));
  EXPECT_EQ(w.world.prior_concepts, Dist::uniform(3));
}

TEST(RelevanceModel, Invariants) {
  EXPECT_THROW(RelevanceModel(Matrix::Zero(2, 2)), Error);
  EXPECT_THROW(RelevanceModel(Matrix::Constant(2, 2, 1.2)), Error);
  EXPECT_NO_THROW(RelevanceModel(Matrix::Constant(2, 2, 0.2)));
}

TEST(SymbolTable, Bijection) {
  const SymbolTable t({SymbolId{2}, SymbolId{0}, SymbolId{1}});
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(t.concept_of(t.symbol(ConceptId{c})), ConceptId{c});
  EXPECT_THROW(SymbolTable({SymbolId{0}, SymbolId{0}}), Error);
  EXPECT_THROW(SymbolTable({SymbolId{0}, SymbolId{2}}), Error);
}

TEST(Perturb, ZeroEpsilonIsIdentity) {
  Rng gen(6), rng(7);
  const RelevanceModel m = gen_world(20, 20, {}, gen).agent().relevance;
  EXPECT_EQ(perturb_model(m, 0.0, rng), m);
}

TEST(Perturb, ClampsToUnitInterval) {
  Rng rng(8);
  const RelevanceModel m(Matrix::Constant(50, 50, 0.95));
  const Matrix p = perturb_model(m, 0.1, rng).p_true();
  EXPECT_GE(p.minCoeff(), 0.85);
  EXPECT_LE(p.maxCoeff(), 1.0);
}

TEST(Perturb, MeanAbsoluteChangeIsHalfEpsilon) {
  Rng rng(9);
  const RelevanceModel m(Matrix::Constant(100, 100, 0.5));
  const Matrix p = perturb_model(m, 0.1, rng).p_true();
  EXPECT_NEAR((p.array() - 0.5).abs().mean(), 0.05, 0.005);
}

TEST(Quantize, RoundsToNearestStep) {
  Matrix m(1, 3);
  m << 0.9500001, 0.04, 0.5;
  const Matrix q = quantize_model(RelevanceModel(m), 0.1).p_true();
  EXPECT_DOUBLE_EQ(q(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(q(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(q(0, 2), 0.5);
}

TEST(Quantize, RestoresAllZeroRow) {
  Matrix m(1, 3);
  m << 0.01, 0.03, 0.02;
  const Matrix q = quantize_model(RelevanceModel(m), 0.1).p_true();
  EXPECT_EQ(q, (Matrix(1, 3) << 0.0, 0.1, 0.0).finished());
}

TEST(Quantize, RejectsBadStep) {
  const RelevanceModel m(Matrix::Constant(2, 2, 0.5));
  for (double step : {0.0, -0.1, 1.5}) {
    try {
      quantize_model(m, step);
      FAIL() << step;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kInvalidStep);
    }
  }
}

TEST(Quantize, Idempotent) {
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const RelevanceModel m = gen_world(8, 8, {0.5, 0.5}, rng).agent().relevance;
    const RelevanceModel q = quantize_model(m, 0.1);
    EXPECT_EQ(quantize_model(q, 0.1), q);
  }
}

TEST(Quantize, AbsorbsSmallPerturbationsAwayFromBoundaries) {
  Rng rng(11);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const RelevanceModel m = gen_world(3, 3, {1.0, 1.0}, rng).agent().relevance;
    const double eps = 0.01 * rng.uniform();
    // Skip models with an entry within eps of a rounding boundary.
    const Eigen::ArrayXXd frac = m.p_true().array() * 10.0 - (m.p_true().array() * 10.0).floor();
    if (((frac - 0.5).abs() * 0.1 <= eps).any()) continue;
    ++checked;
    EXPECT_EQ(quantize_model(perturb_model(m, eps, rng), 0.1), quantize_model(m, 0.1));
  }
  EXPECT_GT(checked, 20);
}

TEST(WorldFile, RoundTrip) {
  const auto path = temp_file("rabbit.json");
  save_world(path, rabbit_fixture());
  EXPECT_EQ(load_world(path), rabbit_fixture());
  Rng rng(12);
  const WorldInstance w = gen_world(17, 9, {}, rng);
  save_world(path, w);
  EXPECT_EQ(load_world(path), w);
  std::filesystem::remove(path);
}

TEST(WorldFile, SchemaErrorNamesTheRow) {
  // Rows 1,0,0 | 1,1,0 | 1,1,1: the third zero sits in row 1.
  std::string doc = world_to_json(rabbit_fixture());
  std::size_t p = doc.find("0.0", doc.find("\"p_true\""));
  for (int k = 0; k < 2; ++k) p = doc.find("0.0", p + 1);
  ASSERT_NE(p, std::string::npos);
  doc.replace(p, 3, "2.0");
  try {
    world_from_json(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSchema);
    EXPECT_NE(std::string(e.what()).find("agents[0].p_true"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
  }
}

TEST(WorldFile, TruncatedFileIsParseError) {
  const std::string doc = world_to_json(rabbit_fixture());
  try {
    world_from_json(doc.substr(0, doc.size() / 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kParse);
  }
}

TEST(WorldFile, UnknownFieldRejected) {
  std::string doc = world_to_json(rabbit_fixture());
  doc.insert(1, "\"colour\": 3,");
  try {
    world_from_json(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSchema);
  }
}

TEST(WorldFile, MissingFileIsIoError) {
  try {
    load_world(temp_file("does_not_exist.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIo);
  }
}

}  // namespace
}  // namespace snc
