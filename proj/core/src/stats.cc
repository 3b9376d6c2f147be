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

#include "oodkit/stats.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "oodkit/error.h"
#include "oodkit/parallel.h"

namespace oodkit {
namespace map_stats {

double Mean(std::span<const float> map) {
  double sum = 0.0;
  for (float v : map) sum += v;
  return sum / static_cast<double>(map.size());
}

double Max(std::span<const float> map) {
  float best = map[0];
  for (float v : map) best = std::max(best, v);
  return best;
}

double Std(std::span<const float> map, double mean) {
  double ss = 0.0;
  for (float v : map) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(map.size()));
}

double Median(std::span<const float> map) {
  std::vector<float> buf(map.begin(), map.end());
  const std::size_t mid = buf.size() / 2;
  std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
  const double upper = buf[mid];
  if (buf.size() % 2 == 1) return upper;
  const double lower = *std::max_element(buf.begin(), buf.begin() + mid);
  return 0.5 * (lower + upper);
}

double Entropy(std::span<const float> map) {
  double total = 0.0;
  for (float v : map) total += std::max(v, 0.0f);
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (float v : map) {
    if (v <= 0.0f) continue;
    const double p = v / total;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace map_stats

namespace {

template <typename Kernel>
FeatureBatch Reduce(const ActivationBatch& batch, StatKind kind, Kernel kernel) {
  FeatureBatch out{Matrix(batch.samples(), batch.channels()), kind};
  ParallelFor(batch.samples(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto row = out.values.row(i);
      for (std::size_t c = 0; c < batch.channels(); ++c) {
        row[c] = kernel(batch.map(i, c));
      }
    }
  });
  return out;
}

}  // namespace

FeatureBatch ChannelMean(const ActivationBatch& batch) {
  return Reduce(batch, StatKind::kMean, map_stats::Mean);
}

FeatureBatch ChannelMax(const ActivationBatch& batch) {
  return Reduce(batch, StatKind::kMax, map_stats::Max);
}

FeatureBatch ChannelStd(const ActivationBatch& batch) {
  return Reduce(batch, StatKind::kStd, [](std::span<const float> map) {
    return map_stats::Std(map, map_stats::Mean(map));
  });
}

FeatureBatch ChannelMedian(const ActivationBatch& batch) {
  return Reduce(batch, StatKind::kMedian, map_stats::Median);
}

FeatureBatch ChannelEntropy(const ActivationBatch& batch) {
  return Reduce(batch, StatKind::kEntropy, map_stats::Entropy);
}

ChannelStats ComputeChannelStats(const ActivationBatch& batch) {
  const std::size_t n = batch.channels();
  ChannelStats stats{{Matrix(batch.samples(), n), StatKind::kMean},
                     {Matrix(batch.samples(), n), StatKind::kMax},
                     {Matrix(batch.samples(), n), StatKind::kStd}};
  ParallelFor(batch.samples(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t c = 0; c < n; ++c) {
        const auto map = batch.map(i, c);
        const double mean = map_stats::Mean(map);
        stats.mean.values(i, c) = mean;
        stats.max.values(i, c) = map_stats::Max(map);
        stats.std.values(i, c) = map_stats::Std(map, mean);
      }
    }
  });
  return stats;
}

FeatureBatch ComputeStatistic(const ActivationBatch& batch, StatKind kind) {
  switch (kind) {
    case StatKind::kMean: return ChannelMean(batch);
    case StatKind::kMax: return ChannelMax(batch);
    case StatKind::kStd: return ChannelStd(batch);
    case StatKind::kMedian: return ChannelMedian(batch);
    case StatKind::kEntropy: return ChannelEntropy(batch);
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "not a channel statistic: " + std::string(StatKindName(kind)));
  }
}

}  // namespace oodkit
