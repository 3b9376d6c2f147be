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

#ifndef OODKIT_SHAPING_H_
#define OODKIT_SHAPING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodkit/stats.h"
#include "oodkit/types.h"

namespace oodkit {

enum class ShapingMethod {
  kIdentity,
  kDavisMax,      // h <- m(x)
  kDavisMeanStd,  // h <- mu(x) + gamma * sigma(x)
  kReact,
  kDice,
  kAshS,
  kScale,
};

std::string_view ShapingMethodName(ShapingMethod method);
ShapingMethod ParseShapingMethod(std::string_view name);

enum class PercentileRule {
  kLinear,   // interpolate at (p/100)(m-1), numpy's default
  kNearest,  // round that position half-to-even
};

std::string_view PercentileRuleName(PercentileRule rule);
PercentileRule ParsePercentileRule(std::string_view name);

// p in [0, 100]. Throws kEmptyBatch on empty input.
double Percentile(std::span<const double> values, double p,
                  PercentileRule rule = PercentileRule::kLinear);

// Binary n x C mask; every column keeps exactly keep_count inputs.
class DiceMask {
 public:
  DiceMask() = default;
  DiceMask(std::size_t inputs, std::size_t classes, std::vector<std::uint8_t> bits);

  std::size_t inputs() const { return inputs_; }
  std::size_t classes() const { return classes_; }
  std::size_t keep_count() const { return keep_count_; }
  bool kept(std::size_t j, std::size_t c) const { return bits_[j * classes_ + c] != 0; }

  static DiceMask AllOnes(std::size_t inputs, std::size_t classes);
  Matrix ToMatrix() const;
  static DiceMask FromMatrix(const Matrix& m);

  friend bool operator==(const DiceMask&, const DiceMask&) = default;

 private:
  std::size_t inputs_ = 0;
  std::size_t classes_ = 0;
  std::size_t keep_count_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct ShapingConfig {
  ShapingMethod method = ShapingMethod::kIdentity;
  std::optional<double> gamma;       // davis_mu_sigma
  std::optional<double> percentile;  // react, dice, ash_s, scale
  PercentileRule rule = PercentileRule::kLinear;
  std::optional<double> react_threshold;  // fitted or supplied c
  std::optional<DiceMask> dice_mask;      // fitted or supplied M

  // Throws kInvalidArgument / kNegativeGamma on missing or out-of-range
  // hyperparameters.
  void Validate() const;
  // Short label such as "davis_mu_sigma(gamma=3)".
  std::string Label() const;
};

FeatureBatch DavisMax(const ChannelStats& stats);
FeatureBatch DavisMeanStd(const ChannelStats& stats, double gamma);

// Percentile of all ID feature values pooled together.
double ReactThreshold(const FeatureBatch& id_features, double percentile,
                      PercentileRule rule = PercentileRule::kLinear);
FeatureBatch React(const FeatureBatch& features, double threshold);

// n - floor(n * p / 100), at least 1.
std::size_t DiceKeepCount(std::size_t inputs, double percentile);
// Contribution V[j][c] = W[j][c] * mean_i h[i][j]; each column keeps its
// keep_count largest entries, lower channel index first on ties.
Matrix DiceContribution(const FeatureBatch& id_features, const ClassifierHead& head);
DiceMask FitDiceMask(const FeatureBatch& id_features, const ClassifierHead& head,
                     double percentile);
ClassifierHead ApplyDiceMask(const ClassifierHead& head, const DiceMask& mask);
LogitBatch DiceLogits(const FeatureBatch& features, const ClassifierHead& head,
                      const DiceMask& mask);

// Per sample: t = percentile, s1 = sum(h); values < t are zeroed;
// s2 = sum of survivors; survivors are multiplied by exp(s1 / s2).
// s2 == 0 leaves the pruned vector unscaled.
FeatureBatch AshS(const FeatureBatch& features, double percentile,
                  PercentileRule rule = PercentileRule::kLinear);

// Per sample: r = sum(h) / sum(h[h >= t]); output exp(r) * h, nothing
// pruned. A zero denominator gives r = 0.
FeatureBatch ScaleShape(const FeatureBatch& features, double percentile,
                        PercentileRule rule = PercentileRule::kLinear);

// What a pipeline consumes: channel statistics when activations are
// available, otherwise pre-pooled GAP features.
struct ShapingInput {
  std::optional<ChannelStats> stats;
  std::optional<FeatureBatch> features;

  static ShapingInput FromActivations(const ActivationBatch& batch);
  static ShapingInput FromFeatures(FeatureBatch features);

  // GAP features: stats.mean if present, otherwise the raw features.
  const FeatureBatch& Baseline() const;
  std::size_t samples() const { return Baseline().samples(); }
};

// A shaping pipeline with every fit-time artifact resolved. Stages run left
// to right; DAVIS stages must come first because they consume statistics.
// ReAct thresholds and DICE masks that were not supplied are fitted on the
// ID features as shaped by the preceding stages. A DICE stage leaves the
// features untouched and masks the head instead.
class FittedPipeline {
 public:
  static FittedPipeline Fit(std::vector<ShapingConfig> stages,
                            const ShapingInput& fit_input,
                            const ClassifierHead& head);
  // Requires every ReAct/DICE stage to carry its artifact already.
  static FittedPipeline FromFitted(std::vector<ShapingConfig> stages,
                                   const ClassifierHead& head);

  FeatureBatch Transform(const ShapingInput& input) const;
  LogitBatch Logits(const ShapingInput& input) const;

  const std::vector<ShapingConfig>& stages() const { return stages_; }
  // The original head, or its DICE-masked version.
  const ClassifierHead& head() const { return head_; }

 private:
  std::vector<ShapingConfig> stages_;
  ClassifierHead head_;
};

// Applies fully fitted stages to an input (DICE stages are skipped here).
FeatureBatch Compose(const ShapingInput& input,
                     std::span<const ShapingConfig> stages);

}  // namespace oodkit

#endif  // OODKIT_SHAPING_H_
