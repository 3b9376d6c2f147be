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

#ifndef OODKIT_PIPELINE_H_
#define OODKIT_PIPELINE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oodkit/analysis.h"
#include "oodkit/manifest.h"
#include "oodkit/metrics.h"
#include "oodkit/shaping.h"
#include "oodkit/types.h"

namespace oodkit {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

// All splits of one evaluation, in memory.
struct Suite {
  std::string name;
  SplitData id;                       // scored ID split (id_test)
  std::optional<SplitData> id_train;  // fit split for ReAct/DICE
  std::optional<SplitData> proxy_val; // noise-corrupted ID for sweeps
  std::vector<SplitData> ood;
  ClassifierHead head;
  std::map<std::string, std::string> digests;  // file -> FNV-1a
  std::optional<std::uint64_t> seed;           // synthetic suites only
};

Suite LoadSuite(const std::filesystem::path& suite_manifest);

// id_train, id, proxy_val and one OOD split ("ood:synthetic") drawn from
// independent streams of `spec`. proxy_val uses the OOD map parameters.
Suite SyntheticSuite(const SyntheticSpec& spec);

// Writes the suite's tensors, per-split manifests and suite.json into dir.
std::filesystem::path WriteSuite(const Suite& suite, const std::filesystem::path& dir);

struct ScoreConfig {
  ScoreKind kind = ScoreKind::kEnergy;
  double temperature = 1.0;
};

ScoreSet ScoreSplit(const FittedPipeline& pipeline, const SplitData& split,
                    const ScoreConfig& score);
ShapingInput InputFor(const SplitData& split);

// The split used to fit ReAct/DICE artifacts: id_train if present, else the
// ID test split (a warning is recorded).
const SplitData& FitSplit(const Suite& suite, std::vector<std::string>* warnings);

enum class SelectionMetric { kFpr95, kAuroc };

std::string_view SelectionMetricName(SelectionMetric m);
SelectionMetric ParseSelectionMetric(std::string_view name);

struct SweepPoint {
  double value = 0.0;
  std::string label;
  EvalResult proxy;  // ID vs proxy_val
};

struct SweepSummary {
  std::string parameter;  // "gamma" or "percentile"
  std::size_t stage = 0;  // pipeline index of the swept stage
  SelectionMetric metric = SelectionMetric::kFpr95;
  std::vector<SweepPoint> points;  // grid order
  double chosen = 0.0;
};

// Index of the best point: lowest FPR95 or highest AUROC, ties to the
// smallest hyperparameter value.
std::size_t SelectSweepPoint(std::span<const SweepPoint> points, SelectionMetric metric);

struct RunReport {
  std::string suite_name;
  std::vector<std::string> pipeline;  // stage labels at the chosen config
  std::string score_kind;
  double temperature = 1.0;
  double tpr_target = 0.95;
  std::string fit_split;
  std::optional<SweepSummary> sweep;
  SuiteEvaluation evaluation;
  // Two-branch contract: classification runs on raw GAP features.
  std::optional<double> id_accuracy_raw;
  std::optional<double> id_accuracy_shaped;
  std::vector<std::string> warnings;
  std::map<std::string, std::string> digests;
  std::optional<std::uint64_t> seed;
  // Fitted artifacts, for reuse.
  std::vector<ShapingConfig> fitted_stages;
};

RunReport RunSuite(const Suite& suite, const std::vector<ShapingConfig>& pipeline,
                   const ScoreConfig& score, double tpr_target = 0.95);

// Evaluates every grid value of one stage's hyperparameter on (id,
// proxy_val), picks the best, then runs the suite at that value.
RunReport SweepStage(const Suite& suite, const std::vector<ShapingConfig>& pipeline,
                     std::size_t stage, std::span<const double> grid,
                     SelectionMetric metric, const ScoreConfig& score,
                     double tpr_target = 0.95);

// DAVIS(mu, sigma) + energy over a gamma grid.
RunReport SweepGamma(const Suite& suite, std::span<const double> grid,
                     SelectionMetric metric, double tpr_target = 0.95);

// Percentile sweep for react/dice/ash_s/scale, optionally after fixed
// prefix stages such as a DAVIS stage.
RunReport SweepPercentile(const Suite& suite, ShapingMethod method,
                          std::span<const double> grid, SelectionMetric metric,
                          const std::vector<ShapingConfig>& prefix = {},
                          double tpr_target = 0.95);

std::string RunReportToJson(const RunReport& report);
// Rows = methods, columns = <ood>_fpr95, <ood>_auroc per set, then averages.
std::string RunReportToCsv(const RunReport& report);

// JSON run configuration:
//   {"suite": "suite.json" | {"synthetic": {...spec...}},
//    "pipeline": [{"method": "davis_m"},
//                 {"method": "dice", "params": {"percentile": 70}}],
//    "score": {"method": "energy", "temperature": 1.0},
//    "tpr": 0.95,
//    "sweep": {"stage": 0, "grid": [0, 0.5, 1, 3], "metric": "fpr95"}}
struct RunConfig {
  std::optional<std::filesystem::path> suite_path;
  std::optional<SyntheticSpec> synthetic;
  std::vector<ShapingConfig> pipeline;
  ScoreConfig score;
  double tpr_target = 0.95;
  struct Sweep {
    std::size_t stage = 0;
    std::vector<double> grid;
    SelectionMetric metric = SelectionMetric::kFpr95;
  };
  std::optional<Sweep> sweep;
};

RunConfig ParseRunConfig(std::string_view json, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);
// Parses one {"method": ..., "params": {...}} stage (flat keys also accepted).
ShapingConfig ParseStage(std::string_view json);
RunReport ExecuteRun(const RunConfig& config);

// Fit artifacts: JSON with the stages; DICE masks go to sibling .npy files.
void SaveFittedStages(const std::vector<ShapingConfig>& stages,
                      const std::filesystem::path& json_path);
std::vector<ShapingConfig> LoadFittedStages(const std::filesystem::path& json_path);

std::string ScoreSetToJson(const ScoreSet& scores);
ScoreSet ScoreSetFromJson(std::string_view json);

}  // namespace oodkit

#endif  // OODKIT_PIPELINE_H_
