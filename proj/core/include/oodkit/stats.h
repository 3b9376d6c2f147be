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

#ifndef OODKIT_STATS_H_
#define OODKIT_STATS_H_

#include <span>

#include "oodkit/types.h"

namespace oodkit {

// Per-channel statistics of pre-pooling activation maps. All reductions
// accumulate in double in fixed row-major spatial order, so results do not
// depend on thread count.

struct ChannelStats {
  FeatureBatch mean;
  FeatureBatch max;
  FeatureBatch std;
};

FeatureBatch ChannelMean(const ActivationBatch& batch);
FeatureBatch ChannelMax(const ActivationBatch& batch);
// Population standard deviation (divides by k*k).
FeatureBatch ChannelStd(const ActivationBatch& batch);
// Even map sizes average the two middle order statistics.
FeatureBatch ChannelMedian(const ActivationBatch& batch);
// Shannon entropy (natural log) of the map normalized to sum 1. Negative
// activations are clamped to 0 first; an all-zero map has entropy 0.
FeatureBatch ChannelEntropy(const ActivationBatch& batch);

// mean, max and std in one pass; bitwise identical to the individual calls.
ChannelStats ComputeChannelStats(const ActivationBatch& batch);

// Dispatch by kind; kMean, kMax, kStd, kMedian, kEntropy only.
FeatureBatch ComputeStatistic(const ActivationBatch& batch, StatKind kind);

namespace map_stats {

double Mean(std::span<const float> map);
double Max(std::span<const float> map);
double Std(std::span<const float> map, double mean);
double Median(std::span<const float> map);
double Entropy(std::span<const float> map);

}  // namespace map_stats
}  // namespace oodkit

#endif  // OODKIT_STATS_H_
