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

#include "oodkit/types.h"

#include <cmath>
#include <string>

#include "oodkit/error.h"

namespace oodkit {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kInvalidShape,
                "matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " given " + std::to_string(data_.size()) + " values");
  }
}

ActivationBatch::ActivationBatch(std::size_t samples, std::size_t channels,
                                 std::size_t edge, std::vector<float> values)
    : samples_(samples), channels_(channels), edge_(edge),
      values_(std::move(values)) {
  if (samples == 0 || channels == 0 || edge == 0) {
    throw Error(ErrorCode::kInvalidShape,
                "activation batch dimensions must be >= 1");
  }
  if (values_.size() != samples * channels * edge * edge) {
    throw Error(ErrorCode::kInvalidShape,
                "activation batch holds " + std::to_string(values_.size()) +
                    " values, shape needs " +
                    std::to_string(samples * channels * edge * edge));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::kNonFinite,
                  "activation value at flat index " + std::to_string(i));
    }
  }
}

std::string_view StatKindName(StatKind kind) {
  switch (kind) {
    case StatKind::kRawGap: return "raw_gap";
    case StatKind::kMean: return "mean";
    case StatKind::kMax: return "max";
    case StatKind::kStd: return "std";
    case StatKind::kMedian: return "median";
    case StatKind::kEntropy: return "entropy";
    case StatKind::kShaped: return "shaped";
  }
  return "unknown";
}

ClassifierHead::ClassifierHead(Matrix weights, std::vector<double> bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (weights_.rows() == 0) {
    throw Error(ErrorCode::kInvalidShape, "head weights have no rows");
  }
  if (weights_.cols() < 2) {
    throw Error(ErrorCode::kInvalidShape,
                "head needs at least 2 classes, weights have " +
                    std::to_string(weights_.cols()) + " columns");
  }
  if (bias_.size() != weights_.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                "head bias length " + std::to_string(bias_.size()) +
                    " != weight columns " + std::to_string(weights_.cols()));
  }
  for (double w : weights_.values()) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kNonFinite, "head weights");
  }
  for (double b : bias_) {
    if (!std::isfinite(b)) throw Error(ErrorCode::kNonFinite, "head bias");
  }
}

std::vector<double> ClassifierHead::ColumnSums() const {
  std::vector<double> sums(classes(), 0.0);
  for (std::size_t j = 0; j < inputs(); ++j) {
    for (std::size_t c = 0; c < classes(); ++c) sums[c] += weights_(j, c);
  }
  return sums;
}

std::string_view ScoreKindName(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::kEnergy: return "energy";
    case ScoreKind::kMsp: return "msp";
    case ScoreKind::kMspTemperature: return "msp_temperature";
  }
  return "unknown";
}

ScoreKind ParseScoreKind(std::string_view name) {
  if (name == "energy") return ScoreKind::kEnergy;
  if (name == "msp") return ScoreKind::kMsp;
  if (name == "msp_temperature" || name == "msp-temp") {
    return ScoreKind::kMspTemperature;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown score kind '" + std::string(name) + "'");
}

}  // namespace oodkit
