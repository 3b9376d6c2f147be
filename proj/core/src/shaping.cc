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

#include "oodkit/shaping.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "oodkit/error.h"
#include "oodkit/parallel.h"
#include "oodkit/scoring.h"

namespace oodkit {
namespace {

std::string Num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void RequirePercentile(const std::optional<double>& p, ShapingMethod method,
                       bool allow_zero, bool allow_hundred) {
  const std::string name(ShapingMethodName(method));
  if (!p) {
    throw Error(ErrorCode::kInvalidArgument, name + " requires a percentile");
  }
  const bool low_ok = allow_zero ? *p >= 0.0 : *p > 0.0;
  const bool high_ok = allow_hundred ? *p <= 100.0 : *p < 100.0;
  if (!std::isfinite(*p) || !low_ok || !high_ok) {
    throw Error(ErrorCode::kInvalidArgument,
                name + " percentile " + Num(*p) + " out of range");
  }
}

// Linear interpolation with numpy's lerp: a + t(b-a) below t = 0.5,
// b - (1-t)(b-a) above.
double Lerp(double a, double b, double t) {
  const double diff = b - a;
  return t >= 0.5 ? b - diff * (1.0 - t) : a + diff * t;
}

double SortedPercentile(std::span<const double> sorted, double p,
                        PercentileRule rule) {
  const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
  if (rule == PercentileRule::kNearest) {
    return sorted[static_cast<std::size_t>(std::nearbyint(pos))];
  }
  const double lower = std::floor(pos);
  const auto lo = static_cast<std::size_t>(lower);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return Lerp(sorted[lo], sorted[lo + 1], pos - lower);
}

template <typename RowFn>
FeatureBatch MapRows(const FeatureBatch& in, RowFn fn) {
  FeatureBatch out{in.values, StatKind::kShaped};
  ParallelFor(in.samples(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch;
    for (std::size_t i = begin; i < end; ++i) fn(out.values.row(i), scratch);
  });
  return out;
}

void RequireStats(const ShapingInput& input, bool fresh, ShapingMethod method) {
  if (!input.stats || !fresh) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(ShapingMethodName(method)) +
                    " needs channel statistics and must be the first stage");
  }
}

}  // namespace

std::string_view ShapingMethodName(ShapingMethod method) {
  switch (method) {
    case ShapingMethod::kIdentity: return "identity";
    case ShapingMethod::kDavisMax: return "davis_m";
    case ShapingMethod::kDavisMeanStd: return "davis_mu_sigma";
    case ShapingMethod::kReact: return "react";
    case ShapingMethod::kDice: return "dice";
    case ShapingMethod::kAshS: return "ash_s";
    case ShapingMethod::kScale: return "scale";
  }
  return "unknown";
}

ShapingMethod ParseShapingMethod(std::string_view name) {
  for (auto m : {ShapingMethod::kIdentity, ShapingMethod::kDavisMax,
                 ShapingMethod::kDavisMeanStd, ShapingMethod::kReact,
                 ShapingMethod::kDice, ShapingMethod::kAshS, ShapingMethod::kScale}) {
    if (ShapingMethodName(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown shaping method '" + std::string(name) + "'");
}

std::string_view PercentileRuleName(PercentileRule rule) {
  return rule == PercentileRule::kLinear ? "linear" : "nearest";
}

PercentileRule ParsePercentileRule(std::string_view name) {
  if (name == "linear") return PercentileRule::kLinear;
  if (name == "nearest") return PercentileRule::kNearest;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown percentile rule '" + std::string(name) + "'");
}

double Percentile(std::span<const double> values, double p, PercentileRule rule) {
  if (values.empty()) throw Error(ErrorCode::kEmptyBatch, "percentile of nothing");
  if (!(p >= 0.0 && p <= 100.0)) {
    throw Error(ErrorCode::kInvalidArgument, "percentile " + Num(p) + " out of range");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return SortedPercentile(sorted, p, rule);
}

DiceMask::DiceMask(std::size_t inputs, std::size_t classes,
                   std::vector<std::uint8_t> bits)
    : inputs_(inputs), classes_(classes), bits_(std::move(bits)) {
  if (bits_.size() != inputs * classes || inputs == 0 || classes == 0) {
    throw Error(ErrorCode::kInvalidShape, "dice mask must be n x C");
  }
  for (std::size_t c = 0; c < classes; ++c) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < inputs; ++j) ones += kept(j, c) ? 1 : 0;
    if (c == 0) keep_count_ = ones;
    if (ones != keep_count_ || ones == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dice mask column " + std::to_string(c) + " keeps " +
                      std::to_string(ones) + " weights, expected " +
                      std::to_string(keep_count_) + " (>= 1) in every column");
    }
  }
}

DiceMask DiceMask::AllOnes(std::size_t inputs, std::size_t classes) {
  return DiceMask(inputs, classes, std::vector<std::uint8_t>(inputs * classes, 1));
}

Matrix DiceMask::ToMatrix() const {
  Matrix m(inputs_, classes_);
  for (std::size_t j = 0; j < inputs_; ++j) {
    for (std::size_t c = 0; c < classes_; ++c) m(j, c) = kept(j, c) ? 1.0 : 0.0;
  }
  return m;
}

DiceMask DiceMask::FromMatrix(const Matrix& m) {
  std::vector<std::uint8_t> bits(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double v = m.values()[i];
    if (v != 0.0 && v != 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "dice mask entries must be 0 or 1");
    }
    bits[i] = v == 1.0 ? 1 : 0;
  }
  return DiceMask(m.rows(), m.cols(), std::move(bits));
}

void ShapingConfig::Validate() const {
  switch (method) {
    case ShapingMethod::kIdentity:
    case ShapingMethod::kDavisMax:
      break;
    case ShapingMethod::kDavisMeanStd:
      if (!gamma) {
        throw Error(ErrorCode::kInvalidArgument, "davis_mu_sigma requires gamma");
      }
      if (!std::isfinite(*gamma) || *gamma < 0.0) {
        throw Error(ErrorCode::kNegativeGamma,
                    "gamma must be finite and >= 0, got " + Num(*gamma));
      }
      break;
    case ShapingMethod::kReact:
      if (react_threshold) {
        if (!std::isfinite(*react_threshold)) {
          throw Error(ErrorCode::kInvalidArgument, "react threshold must be finite");
        }
      } else {
        RequirePercentile(percentile, method, true, true);
      }
      break;
    case ShapingMethod::kDice:
      if (!dice_mask) RequirePercentile(percentile, method, true, false);
      break;
    case ShapingMethod::kAshS:
    case ShapingMethod::kScale:
      RequirePercentile(percentile, method, false, false);
      break;
  }
}

std::string ShapingConfig::Label() const {
  std::string label(ShapingMethodName(method));
  if (method == ShapingMethod::kDavisMeanStd && gamma) {
    label += "(gamma=" + Num(*gamma) + ")";
  } else if (percentile) {
    label += "(p=" + Num(*percentile) + ")";
  } else if (method == ShapingMethod::kReact && react_threshold) {
    label += "(c=" + Num(*react_threshold) + ")";
  }
  return label;
}

FeatureBatch DavisMax(const ChannelStats& stats) {
  return {stats.max.values, StatKind::kShaped};
}

FeatureBatch DavisMeanStd(const ChannelStats& stats, double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw Error(ErrorCode::kNegativeGamma,
                "gamma must be finite and >= 0, got " + Num(gamma));
  }
  if (stats.mean.values.rows() != stats.std.values.rows() ||
      stats.mean.values.cols() != stats.std.values.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "mean and std batches differ in shape");
  }
  FeatureBatch out{stats.mean.values, StatKind::kShaped};
  if (gamma == 0.0) return out;  // keeps -0.0 means bitwise intact
  auto dst = out.values.values();
  const auto sd = stats.std.values.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += gamma * sd[i];
  return out;
}

double ReactThreshold(const FeatureBatch& id_features, double percentile,
                      PercentileRule rule) {
  if (id_features.values.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "react threshold needs ID features");
  }
  return Percentile(id_features.values.values(), percentile, rule);
}

FeatureBatch React(const FeatureBatch& features, double threshold) {
  FeatureBatch out{features.values, StatKind::kShaped};
  for (double& v : out.values.values()) v = std::min(v, threshold);
  return out;
}

std::size_t DiceKeepCount(std::size_t inputs, double percentile) {
  const auto pruned = static_cast<std::size_t>(
      std::floor(static_cast<double>(inputs) * percentile / 100.0));
  return pruned >= inputs ? 1 : inputs - pruned;
}

Matrix DiceContribution(const FeatureBatch& id_features, const ClassifierHead& head) {
  if (id_features.samples() == 0) {
    throw Error(ErrorCode::kEmptyBatch, "dice needs ID features");
  }
  if (id_features.channels() != head.inputs()) {
    throw Error(ErrorCode::kShapeMismatch,
                "ID features have " + std::to_string(id_features.channels()) +
                    " columns, head expects " + std::to_string(head.inputs()));
  }
  const std::size_t n = head.inputs();
  std::vector<double> mean(n, 0.0);
  for (std::size_t i = 0; i < id_features.samples(); ++i) {
    const auto row = id_features.values.row(i);
    for (std::size_t j = 0; j < n; ++j) mean[j] += row[j];
  }
  for (double& m : mean) m /= static_cast<double>(id_features.samples());
  Matrix v(n, head.classes());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < head.classes(); ++c) {
      v(j, c) = head.weights()(j, c) * mean[j];
    }
  }
  return v;
}

DiceMask FitDiceMask(const FeatureBatch& id_features, const ClassifierHead& head,
                     double percentile) {
  if (!(percentile >= 0.0 && percentile < 100.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dice percentile " + Num(percentile) +
                                                 " outside [0, 100)");
  }
  const Matrix v = DiceContribution(id_features, head);
  const std::size_t n = head.inputs();
  const std::size_t keep = DiceKeepCount(n, percentile);
  std::vector<std::uint8_t> bits(n * head.classes(), 0);
  std::vector<std::size_t> order(n);
  for (std::size_t c = 0; c < head.classes(); ++c) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return v(a, c) > v(b, c);
    });
    for (std::size_t r = 0; r < keep; ++r) bits[order[r] * head.classes() + c] = 1;
  }
  return DiceMask(n, head.classes(), std::move(bits));
}

ClassifierHead ApplyDiceMask(const ClassifierHead& head, const DiceMask& mask) {
  if (mask.inputs() != head.inputs() || mask.classes() != head.classes()) {
    throw Error(ErrorCode::kShapeMismatch,
                "dice mask " + std::to_string(mask.inputs()) + "x" +
                    std::to_string(mask.classes()) + " vs head " +
                    std::to_string(head.inputs()) + "x" +
                    std::to_string(head.classes()));
  }
  Matrix w = head.weights();
  for (std::size_t j = 0; j < w.rows(); ++j) {
    for (std::size_t c = 0; c < w.cols(); ++c) {
      if (!mask.kept(j, c)) w(j, c) = 0.0;
    }
  }
  return ClassifierHead(std::move(w),
                        std::vector<double>(head.bias().begin(), head.bias().end()));
}

LogitBatch DiceLogits(const FeatureBatch& features, const ClassifierHead& head,
                      const DiceMask& mask) {
  return ComputeLogits(features, ApplyDiceMask(head, mask));
}

FeatureBatch AshS(const FeatureBatch& features, double percentile,
                  PercentileRule rule) {
  RequirePercentile(percentile, ShapingMethod::kAshS, false, false);
  return MapRows(features, [&](std::span<double> row, std::vector<double>& scratch) {
    scratch.assign(row.begin(), row.end());
    std::sort(scratch.begin(), scratch.end());
    const double t = SortedPercentile(scratch, percentile, rule);
    double s1 = 0.0;
    for (double v : row) s1 += v;
    for (double& v : row) {
      if (v < t) v = 0.0;
    }
    double s2 = 0.0;
    for (double v : row) s2 += v;
    if (s2 == 0.0) return;
    const double scale = std::exp(s1 / s2);
    for (double& v : row) v *= scale;
  });
}

FeatureBatch ScaleShape(const FeatureBatch& features, double percentile,
                        PercentileRule rule) {
  RequirePercentile(percentile, ShapingMethod::kScale, false, false);
  return MapRows(features, [&](std::span<double> row, std::vector<double>& scratch) {
    scratch.assign(row.begin(), row.end());
    std::sort(scratch.begin(), scratch.end());
    const double t = SortedPercentile(scratch, percentile, rule);
    double s1 = 0.0;
    double s2 = 0.0;
    for (double v : row) {
      s1 += v;
      if (v >= t) s2 += v;
    }
    const double r = s2 == 0.0 ? 0.0 : s1 / s2;
    const double scale = std::exp(r);
    for (double& v : row) v *= scale;
  });
}

ShapingInput ShapingInput::FromActivations(const ActivationBatch& batch) {
  return {ComputeChannelStats(batch), std::nullopt};
}

ShapingInput ShapingInput::FromFeatures(FeatureBatch features) {
  return {std::nullopt, std::move(features)};
}

const FeatureBatch& ShapingInput::Baseline() const {
  if (stats) return stats->mean;
  if (features) return *features;
  throw Error(ErrorCode::kInvalidArgument, "shaping input holds no data");
}

namespace {

// Runs one stage. `fresh` is true while no stage has altered the input yet.
FeatureBatch ApplyStage(const ShapingConfig& stage, const ShapingInput& input,
                        FeatureBatch current, bool fresh) {
  switch (stage.method) {
    case ShapingMethod::kIdentity:
    case ShapingMethod::kDice:
      return current;
    case ShapingMethod::kDavisMax:
      RequireStats(input, fresh, stage.method);
      return DavisMax(*input.stats);
    case ShapingMethod::kDavisMeanStd:
      RequireStats(input, fresh, stage.method);
      return DavisMeanStd(*input.stats, *stage.gamma);
    case ShapingMethod::kReact:
      return React(current, *stage.react_threshold);
    case ShapingMethod::kAshS:
      return AshS(current, *stage.percentile, stage.rule);
    case ShapingMethod::kScale:
      return ScaleShape(current, *stage.percentile, stage.rule);
  }
  return current;
}

bool KeepsFresh(ShapingMethod m) {
  return m == ShapingMethod::kIdentity || m == ShapingMethod::kDice;
}

void CheckDiceCount(std::span<const ShapingConfig> stages) {
  const auto dice = std::count_if(stages.begin(), stages.end(), [](const auto& s) {
    return s.method == ShapingMethod::kDice;
  });
  if (dice > 1) {
    throw Error(ErrorCode::kInvalidArgument, "at most one dice stage per pipeline");
  }
}

}  // namespace

FeatureBatch Compose(const ShapingInput& input, std::span<const ShapingConfig> stages) {
  FeatureBatch current = input.Baseline();
  bool fresh = true;
  for (const auto& stage : stages) {
    stage.Validate();
    if (stage.method == ShapingMethod::kReact && !stage.react_threshold) {
      throw Error(ErrorCode::kInvalidArgument, "react stage has no fitted threshold");
    }
    current = ApplyStage(stage, input, std::move(current), fresh);
    fresh = fresh && KeepsFresh(stage.method);
  }
  return current;
}

FittedPipeline FittedPipeline::Fit(std::vector<ShapingConfig> stages,
                                   const ShapingInput& fit_input,
                                   const ClassifierHead& head) {
  CheckDiceCount(stages);
  FittedPipeline out;
  out.head_ = head;
  FeatureBatch current = fit_input.Baseline();
  bool fresh = true;
  for (auto& stage : stages) {
    stage.Validate();
    if (stage.method == ShapingMethod::kReact && !stage.react_threshold) {
      stage.react_threshold = ReactThreshold(current, *stage.percentile, stage.rule);
    }
    if (stage.method == ShapingMethod::kDice) {
      if (!stage.dice_mask) {
        stage.dice_mask = FitDiceMask(current, head, *stage.percentile);
      }
      out.head_ = ApplyDiceMask(head, *stage.dice_mask);
    }
    current = ApplyStage(stage, fit_input, std::move(current), fresh);
    fresh = fresh && KeepsFresh(stage.method);
  }
  out.stages_ = std::move(stages);
  return out;
}

FittedPipeline FittedPipeline::FromFitted(std::vector<ShapingConfig> stages,
                                          const ClassifierHead& head) {
  CheckDiceCount(stages);
  FittedPipeline out;
  out.head_ = head;
  for (const auto& stage : stages) {
    stage.Validate();
    if (stage.method == ShapingMethod::kReact && !stage.react_threshold) {
      throw Error(ErrorCode::kInvalidArgument, "react stage has no fitted threshold");
    }
    if (stage.method == ShapingMethod::kDice) {
      if (!stage.dice_mask) {
        throw Error(ErrorCode::kInvalidArgument, "dice stage has no fitted mask");
      }
      out.head_ = ApplyDiceMask(head, *stage.dice_mask);
    }
  }
  out.stages_ = std::move(stages);
  return out;
}

FeatureBatch FittedPipeline::Transform(const ShapingInput& input) const {
  return Compose(input, stages_);
}

LogitBatch FittedPipeline::Logits(const ShapingInput& input) const {
  return ComputeLogits(Transform(input), head_);
}

}  // namespace oodkit
