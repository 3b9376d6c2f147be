// Copyright 2026 The oodkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oodkit/scoring.h"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.h"

namespace oodkit {
namespace {

LogitBatch Logits(std::size_t rows, std::size_t cols, std::vector<double> v) {
  return {Matrix(rows, cols, std::move(v))};
}

FeatureBatch Features(std::size_t rows, std::size_t cols, std::vector<double> v) {
  return {Matrix(rows, cols, std::move(v)), StatKind::kRawGap};
}

TEST(ScoringTest, LogitExamples) {
  const ClassifierHead eye(Matrix(2, 2, {1, 0, 0, 1}), {0, 0});
  EXPECT_EQ(ComputeLogits(Features(1, 2, {3, 5}), eye).values, Matrix(1, 2, {3, 5}));
  const ClassifierHead biased(Matrix(2, 3, {1, 2, 3, 4, 5, 6}), {0.5, -1, 2});
  EXPECT_EQ(ComputeLogits(Features(1, 2, {0, 0}), biased).values, Matrix(1, 3, {0.5, -1, 2}));
  EXPECT_OODKIT_ERROR(ComputeLogits(Features(1, 3, {1, 2, 3}), eye),
                      ErrorCode::kShapeMismatch);
}

TEST(ScoringTest, LogitsMatchTripleLoop) {
  std::mt19937_64 rng(31);
  const FeatureBatch h = testing::RandomFeatures(rng, 5, 8);
  const ClassifierHead head = testing::RandomHead(rng, 8, 4);
  const LogitBatch got = ComputeLogits(h, head);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t c = 0; c < 4; ++c) {
      long double want = head.bias()[c];
      for (std::size_t j = 0; j < 8; ++j) {
        want += static_cast<long double>(h.values(i, j)) * head.weights()(j, c);
      }
      EXPECT_LE(testing::RelativeError(got.values(i, c), static_cast<double>(want)), 1e-12);
    }
  }
}

TEST(ScoringTest, EnergyExamples) {
  const ScoreSet s = EnergyScore(Logits(3, 3, {0, 0, -1e9, 1000, 1000, -1e9, 1, 2, 3}));
  EXPECT_NEAR(s.scores[0], std::log(2.0), 1e-15);
  EXPECT_NEAR(s.scores[0], 0.693147, 1e-6);
  EXPECT_NEAR(s.scores[1], 1000 + std::log(2.0), 1e-12);
  // Extended-precision direct summation.
  const long double direct = std::log(std::exp(1.0L) + std::exp(2.0L) + std::exp(3.0L));
  EXPECT_NEAR(s.scores[2], static_cast<double>(direct), 1e-14);
  EXPECT_NEAR(s.scores[2], 3.407606, 1e-6);
  EXPECT_EQ(s.kind, ScoreKind::kEnergy);
}

TEST(ScoringTest, EnergyShiftEquivarianceAndMonotonicity) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> dist(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> l(6);
    for (double& v : l) v = dist(rng);
    const double c = dist(rng);
    std::vector<double> shifted = l;
    for (double& v : shifted) v += c;
    EXPECT_LE(std::abs(LogSumExp(shifted) - LogSumExp(l) - c), 1e-6);
    // Any bump never lowers the score; bumping the top logit raises it.
    std::vector<double> bumped = l;
    bumped[trial % 6] += 0.5;
    EXPECT_GE(LogSumExp(bumped), LogSumExp(l));
    std::vector<double> top = l;
    top[Argmax(l)] += 0.5;
    EXPECT_GT(LogSumExp(top), LogSumExp(l));
    long double naive = 0;
    for (double v : l) naive += std::exp(static_cast<long double>(v));
    EXPECT_LE(testing::RelativeError(LogSumExp(l), static_cast<double>(std::log(naive))), 1e-6);
  }
}

TEST(ScoringTest, MspExamples) {
  const LogitBatch uniform = Logits(1, 4, {0, 0, 0, 0});
  for (double t : {0.1, 1.0, 1000.0}) EXPECT_DOUBLE_EQ(MspScore(uniform, t).scores[0], 0.25);
  EXPECT_NEAR(MspScore(Logits(1, 2, {std::log(3.0), 0}), 1.0).scores[0], 0.75, 1e-15);
  EXPECT_NEAR(MspScore(Logits(1, 2, {3, -2}), 1e6).scores[0], 0.5, 1e-4);
  EXPECT_EQ(MspScore(uniform, 1.0).kind, ScoreKind::kMsp);
  EXPECT_EQ(MspScore(uniform, 1000.0).kind, ScoreKind::kMspTemperature);
  EXPECT_OODKIT_ERROR(MspScore(uniform, 0.0), ErrorCode::kNonpositiveTemperature);
  EXPECT_OODKIT_ERROR(MspScore(uniform, -1.0), ErrorCode::kNonpositiveTemperature);
  EXPECT_OODKIT_ERROR(MspScore(uniform, std::nan("")), ErrorCode::kNonpositiveTemperature);
}

TEST(ScoringTest, MspProperties) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> l(5);
    for (double& v : l) v = dist(rng);
    std::vector<double> shifted = l;
    for (double& v : shifted) v += 7.0;
    const double base = MspScore(Logits(1, 5, l), 1.0).scores[0];
    EXPECT_GT(base, 0.0);
    EXPECT_LE(base, 1.0);
    EXPECT_NEAR(MspScore(Logits(1, 5, shifted), 1.0).scores[0], base, 1e-12);
    double previous = base;
    for (double t : {2.0, 10.0, 100.0, 1000.0}) {  // ODIN-T uses T = 1000
      const double s = MspScore(Logits(1, 5, l), t).scores[0];
      EXPECT_LE(s, previous + 1e-15);
      EXPECT_GE(s, 0.2 - 1e-15);
      previous = s;
    }
  }
}

TEST(ScoringTest, ArgmaxAndAccuracy) {
  EXPECT_EQ(Argmax(std::vector<double>{1, 3, 3}), 1u);
  EXPECT_EQ(Argmax(std::vector<double>{0, 0, 0}), 0u);
  const LogitBatch onehot = Logits(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  EXPECT_EQ(Accuracy(onehot, std::vector<std::int64_t>{0, 1, 2}), 1.0);
  EXPECT_NEAR(Accuracy(onehot, std::vector<std::int64_t>{0, 1, 1}), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(Accuracy(Logits(2, 3, std::vector<double>(6, 0.0)),
                     std::vector<std::int64_t>{0, 0}),
            1.0);
  EXPECT_OODKIT_ERROR(Accuracy(onehot, std::vector<std::int64_t>{0, 1, 3}),
                      ErrorCode::kLabelOutOfRange);
  EXPECT_OODKIT_ERROR(Accuracy(onehot, std::vector<std::int64_t>{0, -1, 2}),
                      ErrorCode::kLabelOutOfRange);
  EXPECT_OODKIT_ERROR(Accuracy(onehot, std::vector<std::int64_t>{0, 1}),
                      ErrorCode::kShapeMismatch);
}

TEST(ScoringTest, UniformWeightShiftMovesLogitsTogether) {
  std::mt19937_64 rng(43);
  const FeatureBatch h = testing::RandomFeatures(rng, 20, 6);
  const ClassifierHead head = testing::RandomHead(rng, 6, 3);
  Matrix w = head.weights();
  const double alpha = 0.375;
  for (double& v : w.values()) v += alpha;
  const ClassifierHead shifted(w, std::vector<double>(head.bias().begin(), head.bias().end()));
  const LogitBatch a = ComputeLogits(h, head), b = ComputeLogits(h, shifted);
  const ScoreSet ea = EnergyScore(a), eb = EnergyScore(b);
  const ScoreSet ma = MspScore(a, 1.0), mb = MspScore(b, 1.0);
  for (std::size_t i = 0; i < 20; ++i) {
    double sum_h = 0;
    for (double v : h.values.row(i)) sum_h += v;
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_NEAR(b.values(i, c) - a.values(i, c), alpha * sum_h, 1e-12);
    }
    EXPECT_EQ(Argmax(a.values.row(i)), Argmax(b.values.row(i)));
    EXPECT_NEAR(mb.scores[i], ma.scores[i], 1e-12);
    EXPECT_NEAR(eb.scores[i] - ea.scores[i], alpha * sum_h, 1e-12);
  }
}

TEST(ScoringTest, HeadValidation) {
  EXPECT_OODKIT_ERROR(ClassifierHead(Matrix(2, 1, {1, 2}), {0}), ErrorCode::kInvalidShape);
  EXPECT_OODKIT_ERROR(ClassifierHead(Matrix(2, 2, {1, 2, 3, 4}), {0}),
                      ErrorCode::kShapeMismatch);
  EXPECT_OODKIT_ERROR(ClassifierHead(Matrix(1, 2, {1, std::nan("")}), {0, 0}),
                      ErrorCode::kNonFinite);
  EXPECT_EQ(ClassifierHead(Matrix(2, 2, {1, 2, 3, 4}), {0, 0}).ColumnSums(),
            (std::vector<double>{4, 6}));
}

TEST(ScoringTest, ScoreKindNames) {
  EXPECT_EQ(ParseScoreKind("energy"), ScoreKind::kEnergy);
  EXPECT_EQ(ParseScoreKind("msp"), ScoreKind::kMsp);
  EXPECT_EQ(ParseScoreKind("msp-temp"), ScoreKind::kMspTemperature);
  EXPECT_EQ(ParseScoreKind(ScoreKindName(ScoreKind::kMspTemperature)),
            ScoreKind::kMspTemperature);
  EXPECT_OODKIT_ERROR(ParseScoreKind("mahalanobis"), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace oodkit
