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

#ifndef OODKIT_ANALYSIS_H_
#define OODKIT_ANALYSIS_H_

// Empirical checks of the separation-gap argument behind DAVIS: feature gaps
// between ID and OOD populations, their transfer to logit gaps through a
// linear head, and a seeded synthetic generator to exercise them.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oodkit/stats.h"
#include "oodkit/types.h"

namespace oodkit {

// E_in[h] - E_out[h] per channel, plus its channel average.
struct GapVector {
  std::vector<double> per_channel;
  double mean = 0.0;
};

GapVector SeparationGap(const FeatureBatch& id, const FeatureBatch& ood);

// Column means of a matrix (sample mean per channel or class).
std::vector<double> ColumnMeans(const Matrix& m);

// W^T gap. The bias cancels in a difference of logits.
std::vector<double> TransferGap(const ClassifierHead& head,
                                std::span<const double> feature_gap);

struct GapReport {
  double gamma = 0.0;
  GapVector delta_mu;
  GapVector delta_m;
  GapVector delta_sigma;
  GapVector delta_mu_sigma;
  // E[f(x_in)] - E[f(x_out)] from the per-sample logits, per class.
  std::vector<double> logit_gap_baseline;
  std::vector<double> logit_gap_max;
  std::vector<double> logit_gap_mu_sigma;
  // Mean energy-score difference between ID and OOD.
  double score_gap_baseline = 0.0;
  double score_gap_max = 0.0;
  double score_gap_mu_sigma = 0.0;
  // Largest relative deviation between the sample-mean logit gap and
  // W^T (feature gap), over the three feature kinds.
  double linearity_error = 0.0;
  // Per-channel violation rates of delta_m >= delta_mu and
  // delta_mu_sigma >= delta_mu.
  double max_vs_mean_violation_rate = 0.0;
  double mu_sigma_vs_mean_violation_rate = 0.0;
};

GapReport ComputeGapReport(const ActivationBatch& id_acts,
                           const ActivationBatch& ood_acts,
                           const ClassifierHead& head, double gamma);

// Sample-mean logit gap with the relative linearity error against W^T gap.
struct LogitGap {
  std::vector<double> direct;      // E[f_in] - E[f_out]
  std::vector<double> transferred; // W^T (E[h_in] - E[h_out])
  double relative_error = 0.0;
};

LogitGap ComputeLogitGap(const FeatureBatch& id, const FeatureBatch& ood,
                         const ClassifierHead& head);

struct Lemma1Check {
  double gamma = 0.0;
  double lhs = 0.0;  // Delta_{mu,sigma}(gamma) - Delta_mu, channel average
  double rhs = 0.0;  // gamma * (E[sigma_in] - E[sigma_out]), channel average
  double relative_error = 0.0;
  double sigma_gap = 0.0;  // E[sigma_in] - E[sigma_out], channel average
  bool holds = false;      // sigma_gap >= 0
  double channel_violation_rate = 0.0;
};

Lemma1Check CheckLemma1(const ChannelStats& id_stats, const ChannelStats& ood_stats,
                        double gamma);

struct Assumption1Result {
  ClassifierHead head;
  double alpha = 0.0;
  // Set when features were supplied: predictions before and after agree.
  std::optional<bool> argmax_preserved;
};

// Adds alpha to every weight so that every column of W sums to >= 0.
// alpha = 0 when that already holds; otherwise
// alpha = max_c(-colsum_c) / n + 1e-6 * max(1, max|W|).
Assumption1Result EnforceAssumption1(const ClassifierHead& head,
                                     const FeatureBatch* features = nullptr);

enum class DavisVariant { kMax, kMeanStd };

struct Theorem1Check {
  std::vector<double> baseline_logit_gap;
  std::vector<double> shaped_logit_gap;
  std::vector<bool> dominance;  // shaped >= baseline, per class
  bool all_dominant = false;
  double baseline_score_gap = 0.0;
  double shaped_score_gap = 0.0;
  double baseline_auroc = 0.0;
  double shaped_auroc = 0.0;
  double baseline_fpr95 = 0.0;
  double shaped_fpr95 = 0.0;
};

// Feature-level comparison. Throws kAssumptionViolated if some column of W
// sums to a negative value.
Theorem1Check CompareShapedGaps(const FeatureBatch& id_base, const FeatureBatch& ood_base,
                                const FeatureBatch& id_shaped,
                                const FeatureBatch& ood_shaped,
                                const ClassifierHead& head);

Theorem1Check CheckTheorem1(const ActivationBatch& id_acts, const ActivationBatch& ood_acts,
                            const ClassifierHead& head, DavisVariant variant,
                            double gamma = 0.0);

enum class Nonlinearity { kRelu, kNone };

// Pixel (i, c, s, t) = act(mean + offset_i + std * z), offset_i shared by all
// channels of sample i with offset_i ~ N(0, sample_offset_std).
struct SyntheticSpec {
  std::size_t channels = 128;
  std::size_t edge = 4;
  std::size_t samples = 2000;  // per split
  std::size_t classes = 10;
  double id_map_mean = 0.5;
  double ood_map_mean = 0.3;
  double id_map_std = 0.5;
  double ood_map_std = 0.4;
  double sample_offset_std = 0.3;
  Nonlinearity nonlinearity = Nonlinearity::kRelu;
  std::uint64_t seed = 1;

  void Validate() const;
};

std::string SyntheticSpecToJson(const SyntheticSpec& spec);
SyntheticSpec SyntheticSpecFromJson(const std::string& text);

// Stream tags for the generator's independent streams.
enum class SyntheticStream : std::uint64_t {
  kIdTrain = 1,
  kIdTest = 2,
  kProxy = 3,
  kOod = 4,
  kHead = 32,
  kBias = 33,
};

// One split of activation maps drawn with the given map mean/std.
ActivationBatch GenerateActivations(const SyntheticSpec& spec, SyntheticStream stream,
                                    double map_mean, double map_std);

// Head with W ~ N(0, 1/n) redrawn per column until its sum is >= 0, and
// bias ~ N(0, 0.1^2).
ClassifierHead GenerateHead(const SyntheticSpec& spec);

struct SyntheticData {
  ActivationBatch id;
  ActivationBatch ood;
  ClassifierHead head;
  std::vector<std::int64_t> labels;  // argmax of the ID GAP logits
};

SyntheticData GenerateSynthetic(const SyntheticSpec& spec);

// The committed seed list for Monte-Carlo theory checks: 1000 + 7919 * i.
std::vector<std::uint64_t> TheorySeeds(std::size_t count);

struct TheoryTrial {
  std::uint64_t seed = 0;
  double baseline_auroc = 0.0;
  double shaped_auroc = 0.0;
  double baseline_fpr95 = 0.0;
  double shaped_fpr95 = 0.0;
  bool logit_gaps_dominant = false;
};

struct TheorySuiteReport {
  // Exact identities, checked on the first seed's data.
  std::vector<Lemma1Check> lemma1;
  double linearity_error = 0.0;
  bool assumption1_argmax_preserved = false;
  double assumption1_energy_error = 0.0;
  double uniform_delta_error = 0.0;
  // Statistical check over all seeds: DAVIS(m) + energy vs energy.
  std::vector<TheoryTrial> trials;
  std::size_t auroc_wins = 0;
  double mean_fpr95_improvement = 0.0;
  bool identities_pass = false;
  bool statistical_pass = false;
};

// Tolerances for the exact identities.
inline constexpr double kLemma1Tolerance = 1e-6;
inline constexpr double kLinearityTolerance = 1e-5;
inline constexpr double kEnergyShiftTolerance = 1e-5;
inline constexpr double kUniformDeltaTolerance = 1e-9;
// Statistical criterion: wins >= 95% of trials.
inline constexpr double kRequiredWinFraction = 0.95;

TheorySuiteReport RunTheorySuite(const SyntheticSpec& base_spec,
                                 std::span<const std::uint64_t> seeds);
std::string TheorySuiteReportToJson(const TheorySuiteReport& report);
std::string GapReportToJson(const GapReport& report);

}  // namespace oodkit

#endif  // OODKIT_ANALYSIS_H_
