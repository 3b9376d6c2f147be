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

#ifndef OODKIT_SCORING_H_
#define OODKIT_SCORING_H_

#include <cstdint>
#include <span>
#include <string>

#include "oodkit/types.h"

namespace oodkit {

// f = W^T h + b. Each logit starts from the bias and adds h[j] * W[j][c]
// for j ascending; any masked or shifted head goes through the same kernel.
LogitBatch ComputeLogits(const FeatureBatch& features, const ClassifierHead& head);

// max + log(sum(exp(x - max))).
double LogSumExp(std::span<const double> values);

// Negative free energy, log sum_j exp(f_j). Higher means more ID-like.
ScoreSet EnergyScore(const LogitBatch& logits, std::string split_name = {});

// Maximum of softmax(f / T). T = 1 is plain MSP (kind kMsp); any other T is
// the temperature-scaled variant without input perturbation ("ODIN-T").
ScoreSet MspScore(const LogitBatch& logits, double temperature,
                  std::string split_name = {});

// Lowest index wins ties.
std::size_t Argmax(std::span<const double> values);

// Fraction of samples whose argmax logit equals the label.
double Accuracy(const LogitBatch& logits, std::span<const std::int64_t> labels);

}  // namespace oodkit

#endif  // OODKIT_SCORING_H_
