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

#ifndef OODKIT_TYPES_H_
#define OODKIT_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oodkit {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// N samples of n channel maps, each k x k, stored as float32 in C order.
// Construction rejects zero dimensions, size mismatches and non-finite values.
class ActivationBatch {
 public:
  ActivationBatch() = default;
  ActivationBatch(std::size_t samples, std::size_t channels, std::size_t edge,
                  std::vector<float> values);

  std::size_t samples() const { return samples_; }
  std::size_t channels() const { return channels_; }
  std::size_t edge() const { return edge_; }
  std::size_t map_size() const { return edge_ * edge_; }

  std::span<const float> map(std::size_t sample, std::size_t channel) const {
    return {values_.data() + (sample * channels_ + channel) * map_size(),
            map_size()};
  }
  std::span<const float> values() const { return values_; }

 private:
  std::size_t samples_ = 0;
  std::size_t channels_ = 0;
  std::size_t edge_ = 0;
  std::vector<float> values_;
};

enum class StatKind { kRawGap, kMean, kMax, kStd, kMedian, kEntropy, kShaped };

std::string_view StatKindName(StatKind kind);

// N x n per-channel features.
struct FeatureBatch {
  Matrix values;
  StatKind kind = StatKind::kRawGap;

  std::size_t samples() const { return values.rows(); }
  std::size_t channels() const { return values.cols(); }
};

// Final linear layer: logits = W^T h + b with W of shape n x C.
class ClassifierHead {
 public:
  ClassifierHead() = default;
  ClassifierHead(Matrix weights, std::vector<double> bias);

  const Matrix& weights() const { return weights_; }
  std::span<const double> bias() const { return bias_; }
  std::size_t inputs() const { return weights_.rows(); }
  std::size_t classes() const { return weights_.cols(); }

  // W^T 1, one entry per class.
  std::vector<double> ColumnSums() const;

 private:
  Matrix weights_;
  std::vector<double> bias_;
};

struct LogitBatch {
  Matrix values;  // N x C

  std::size_t samples() const { return values.rows(); }
  std::size_t classes() const { return values.cols(); }
};

enum class ScoreKind { kEnergy, kMsp, kMspTemperature };

std::string_view ScoreKindName(ScoreKind kind);
ScoreKind ParseScoreKind(std::string_view name);

// Higher score means more ID-like, for every kind.
struct ScoreSet {
  std::string split_name;
  ScoreKind kind = ScoreKind::kEnergy;
  std::vector<double> scores;
};

}  // namespace oodkit

#endif  // OODKIT_TYPES_H_
