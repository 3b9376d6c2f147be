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

#include <cmath>
#include <string>

#include "oodkit/error.h"
#include "oodkit/parallel.h"

namespace oodkit {

LogitBatch ComputeLogits(const FeatureBatch& features, const ClassifierHead& head) {
  if (features.channels() != head.inputs()) {
    throw Error(ErrorCode::kShapeMismatch,
                "features have " + std::to_string(features.channels()) +
                    " columns, head expects n = " + std::to_string(head.inputs()));
  }
  const std::size_t n = head.inputs();
  const std::size_t classes = head.classes();
  const Matrix& w = head.weights();
  LogitBatch out{Matrix(features.samples(), classes)};
  ParallelFor(features.samples(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto f = out.values.row(i);
      const auto h = features.values.row(i);
      for (std::size_t c = 0; c < classes; ++c) f[c] = head.bias()[c];
      for (std::size_t j = 0; j < n; ++j) {
        const auto wj = w.row(j);
        for (std::size_t c = 0; c < classes; ++c) f[c] += h[j] * wj[c];
      }
    }
  });
  return out;
}

double LogSumExp(std::span<const double> values) {
  double top = values[0];
  for (double v : values) top = std::max(top, v);
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

ScoreSet EnergyScore(const LogitBatch& logits, std::string split_name) {
  ScoreSet out{std::move(split_name), ScoreKind::kEnergy,
               std::vector<double>(logits.samples())};
  for (std::size_t i = 0; i < logits.samples(); ++i) {
    out.scores[i] = LogSumExp(logits.values.row(i));
  }
  return out;
}

ScoreSet MspScore(const LogitBatch& logits, double temperature,
                  std::string split_name) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::kNonpositiveTemperature,
                "temperature must be finite and > 0, got " +
                    std::to_string(temperature));
  }
  ScoreSet out{std::move(split_name),
               temperature == 1.0 ? ScoreKind::kMsp : ScoreKind::kMspTemperature,
               std::vector<double>(logits.samples())};
  for (std::size_t i = 0; i < logits.samples(); ++i) {
    const auto row = logits.values.row(i);
    double top = row[0];
    for (double v : row) top = std::max(top, v);
    // The max class contributes exp(0) = 1 to the partition function.
    double z = 0.0;
    for (double v : row) z += std::exp((v - top) / temperature);
    out.scores[i] = 1.0 / z;
  }
  return out;
}

std::size_t Argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < values.size(); ++c) {
    if (values[c] > values[best]) best = c;
  }
  return best;
}

double Accuracy(const LogitBatch& logits, std::span<const std::int64_t> labels) {
  if (labels.size() != logits.samples()) {
    throw Error(ErrorCode::kShapeMismatch,
                "labels (" + std::to_string(labels.size()) + ") vs logits (" +
                    std::to_string(logits.samples()) + " samples)");
  }
  if (labels.empty()) throw Error(ErrorCode::kEmptyBatch, "no samples");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::int64_t y = labels[i];
    if (y < 0 || static_cast<std::size_t>(y) >= logits.classes()) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(y) + " at index " + std::to_string(i) +
                      " outside [0, " + std::to_string(logits.classes()) + ")");
    }
    if (Argmax(logits.values.row(i)) == static_cast<std::size_t>(y)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

}  // namespace oodkit
