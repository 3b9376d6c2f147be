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


#include "oodkit/pipeline.h"

#include <gtest/gtest.h>

#include <fstream>

#include "oodkit/parallel.h"
#include "oodkit/scoring.h"
#include "oodkit/stats.h"
#include "test_util.h"

namespace oodkit {
namespace {

using testing::TempDir;

SyntheticSpec SmallSpec(std::uint64_t seed = 21) {
  SyntheticSpec s;
  s.channels = 24;
  s.edge = 3;
  s.samples = 300;
  s.classes = 6;
  s.seed = seed;
  return s;
}

ShapingConfig Stage(ShapingMethod m) {
  ShapingConfig c;
  c.method = m;
  return c;
}

ShapingConfig Stage(ShapingMethod m, double percentile) {
  ShapingConfig c;
  c.method = m;
  c.percentile = percentile;
  return c;
}

EvalResult Proxy(double fpr, double auroc) {
  EvalResult r;
  r.fpr95 = fpr;
  r.auroc = auroc;
  return r;
}

void ExpectSameEvaluation(const RunReport& a, const RunReport& b) {
  ASSERT_EQ(a.evaluation.per_set.size(), b.evaluation.per_set.size());
  for (std::size_t i = 0; i < a.evaluation.per_set.size(); ++i) {
    EXPECT_EQ(a.evaluation.per_set[i].fpr95, b.evaluation.per_set[i].fpr95);
    EXPECT_EQ(a.evaluation.per_set[i].auroc, b.evaluation.per_set[i].auroc);
    EXPECT_EQ(a.evaluation.per_set[i].lambda, b.evaluation.per_set[i].lambda);
  }
  EXPECT_EQ(a.evaluation.mean_fpr95, b.evaluation.mean_fpr95);
  EXPECT_EQ(a.evaluation.mean_auroc, b.evaluation.mean_auroc);
}

TEST(PipelineTest, IdentityPipelineMatchesRawEnergy) {
  const Suite suite = SyntheticSuite(SmallSpec());
  const RunReport r = RunSuite(suite, {Stage(ShapingMethod::kIdentity)}, ScoreConfig{});
  const auto id = EnergyScore(ComputeLogits(ChannelMean(*suite.id.activations), suite.head));
  const auto ood =
      EnergyScore(ComputeLogits(ChannelMean(*suite.ood[0].activations), suite.head));
  ASSERT_EQ(r.evaluation.per_set.size(), 1u);
  EXPECT_EQ(r.evaluation.per_set[0].auroc, Auroc(id.scores, ood.scores));
  EXPECT_EQ(r.evaluation.per_set[0].fpr95, FprAtTpr(id.scores, ood.scores, 0.95));
  EXPECT_EQ(r.id_accuracy_raw, r.id_accuracy_shaped);
  EXPECT_EQ(r.fit_split, "id_train");
  EXPECT_TRUE(r.warnings.empty());
  // An empty pipeline is the same baseline.
  ExpectSameEvaluation(r, RunSuite(suite, {}, ScoreConfig{}));
}

TEST(PipelineTest, GammaZeroSweepIsBaseline) {
  const Suite suite = SyntheticSuite(SmallSpec());
  const std::vector<double> grid = {0.0};
  const RunReport swept = SweepGamma(suite, grid, SelectionMetric::kFpr95);
  ExpectSameEvaluation(swept, RunSuite(suite, {}, ScoreConfig{}));
  ASSERT_TRUE(swept.sweep.has_value());
  EXPECT_EQ(swept.sweep->chosen, 0.0);
  EXPECT_EQ(swept.sweep->parameter, "gamma");
}

TEST(PipelineTest, SelectionPrefersBestThenSmallest) {
  std::vector<SweepPoint> pts = {{3.0, "", Proxy(0.2, 0.9)},
                                 {1.0, "", Proxy(0.2, 0.8)},
                                 {2.0, "", Proxy(0.4, 0.95)}};
  EXPECT_EQ(SelectSweepPoint(pts, SelectionMetric::kFpr95), 1u);
  EXPECT_EQ(SelectSweepPoint(pts, SelectionMetric::kAuroc), 2u);
  pts[2].proxy.auroc = 0.9;
  pts[1].proxy.auroc = 0.9;
  EXPECT_EQ(SelectSweepPoint(pts, SelectionMetric::kAuroc), 1u);
  EXPECT_OODKIT_ERROR(SelectSweepPoint({}, SelectionMetric::kFpr95),
                      ErrorCode::kInvalidArgument);
  EXPECT_EQ(ParseSelectionMetric("auroc"), SelectionMetric::kAuroc);
  EXPECT_EQ(SelectionMetricName(SelectionMetric::kFpr95), "fpr95");
  EXPECT_OODKIT_ERROR(ParseSelectionMetric("f1"), ErrorCode::kInvalidArgument);
}

TEST(PipelineTest, SweepReselectionReproducesChosenRun) {
  const Suite suite = SyntheticSuite(SmallSpec());
  const std::vector<double> grid = {0.0, 0.5, 1.0, 3.0};
  const RunReport swept = SweepGamma(suite, grid, SelectionMetric::kFpr95);
  ASSERT_EQ(swept.sweep->points.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(swept.sweep->points[i].value, grid[i]);
  }
  const std::size_t best = SelectSweepPoint(swept.sweep->points, SelectionMetric::kFpr95);
  EXPECT_EQ(swept.sweep->chosen, grid[best]);
  ShapingConfig davis = Stage(ShapingMethod::kDavisMeanStd);
  davis.gamma = swept.sweep->chosen;
  ExpectSameEvaluation(swept, RunSuite(suite, {davis}, ScoreConfig{}));
}

TEST(PipelineTest, PercentileSweepAfterPrefix) {
  const Suite suite = SyntheticSuite(SmallSpec());
  const std::vector<double> grid = {10, 50, 90};
  const RunReport r = SweepPercentile(suite, ShapingMethod::kReact, grid,
                                      SelectionMetric::kAuroc,
                                      {Stage(ShapingMethod::kDavisMax)});
  ASSERT_EQ(r.pipeline.size(), 2u);
  EXPECT_EQ(r.sweep->stage, 1u);
  EXPECT_EQ(r.sweep->parameter, "percentile");
  ASSERT_TRUE(r.fitted_stages[1].react_threshold.has_value());
}

TEST(PipelineTest, SweepWithoutProxyIsMissingSplit) {
  Suite suite = SyntheticSuite(SmallSpec());
  suite.proxy_val.reset();
  const std::vector<double> grid = {0.0};
  EXPECT_OODKIT_ERROR(SweepGamma(suite, grid, SelectionMetric::kFpr95),
                      ErrorCode::kMissingSplit);
  EXPECT_OODKIT_ERROR(SweepStage(SyntheticSuite(SmallSpec()), {}, 0, grid,
                                 SelectionMetric::kFpr95, ScoreConfig{}),
                      ErrorCode::kInvalidArgument);
}

TEST(PipelineTest, MissingTrainSplitFallsBackWithWarning) {
  Suite suite = SyntheticSuite(SmallSpec());
  suite.id_train.reset();
  const RunReport r = RunSuite(suite, {Stage(ShapingMethod::kReact, 90)}, ScoreConfig{});
  EXPECT_EQ(r.fit_split, suite.id.name);
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(PipelineTest, WrittenSuiteReproducesInMemoryRun) {
  const Suite suite = SyntheticSuite(SmallSpec());
  TempDir dir;
  const auto manifest = WriteSuite(suite, dir.path());
  const Suite loaded = LoadSuite(manifest);
  EXPECT_EQ(loaded.ood.size(), suite.ood.size());
  EXPECT_EQ(loaded.head.weights(), suite.head.weights());
  EXPECT_FALSE(loaded.digests.empty());
  const std::vector<ShapingConfig> pipeline = {Stage(ShapingMethod::kDavisMax),
                                               Stage(ShapingMethod::kDice, 70)};
  const ScoreConfig score;
  ExpectSameEvaluation(RunSuite(suite, pipeline, score), RunSuite(loaded, pipeline, score));
  // Digests cover files by suite-relative path and are stable.
  EXPECT_EQ(LoadSuite(manifest).digests, loaded.digests);
}

TEST(PipelineTest, DavisThenDiceMasksTheHead) {
  const Suite suite = SyntheticSuite(SmallSpec());
  const RunReport r = RunSuite(
      suite, {Stage(ShapingMethod::kDavisMax), Stage(ShapingMethod::kDice, 70)},
      ScoreConfig{});
  ASSERT_EQ(r.fitted_stages.size(), 2u);
  ASSERT_TRUE(r.fitted_stages[1].dice_mask.has_value());
  EXPECT_EQ(r.fitted_stages[1].dice_mask->keep_count(), DiceKeepCount(24, 70));
  // Classification stays on the raw branch.
  EXPECT_EQ(*r.id_accuracy_raw, 1.0);
}

TEST(PipelineTest, ResultsIndependentOfThreadCount) {
  const Suite suite = SyntheticSuite(SmallSpec());
  const std::vector<double> grid = {0.0, 1.0, 3.0};
  SetMaxThreads(1);
  const std::string one = RunReportToJson(SweepGamma(suite, grid, SelectionMetric::kFpr95));
  SetMaxThreads(8);
  const std::string eight =
      RunReportToJson(SweepGamma(SyntheticSuite(SmallSpec()), grid, SelectionMetric::kFpr95));
  SetMaxThreads(0);
  EXPECT_EQ(one, eight);
}

TEST(PipelineTest, ReportSerialization) {
  const Suite suite = SyntheticSuite(SmallSpec());
  ScoreConfig msp{ScoreKind::kMspTemperature, 1000.0};
  const RunReport r = RunSuite(suite, {Stage(ShapingMethod::kDavisMax)}, msp);
  const std::string json = RunReportToJson(r);
  EXPECT_NE(json.find("\"toolkit_version\": \"0.1.0\""), std::string::npos);
  EXPECT_NE(json.find("\"seed\": 21"), std::string::npos);
  EXPECT_NE(json.find("\"temperature\": 1000"), std::string::npos);
  const std::string csv = RunReportToCsv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "method,ood:synthetic_fpr95,ood:synthetic_auroc,average_fpr95,average_auroc");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(PipelineTest, RunConfigParsing) {
  const RunConfig cfg = ParseRunConfig(R"({
      "suite": "suites/a.json",
      "pipeline": [{"method": "davis_m"}, {"method": "dice", "params": {"percentile": 70}}],
      "score": {"method": "msp", "temperature": 2},
      "tpr": 0.9,
      "sweep": {"stage": 1, "grid": [10, 50], "metric": "auroc"}})",
                                       "/base");
  EXPECT_EQ(*cfg.suite_path, std::filesystem::path("/base/suites/a.json"));
  ASSERT_EQ(cfg.pipeline.size(), 2u);
  EXPECT_EQ(cfg.pipeline[1].method, ShapingMethod::kDice);
  EXPECT_EQ(*cfg.pipeline[1].percentile, 70.0);
  EXPECT_EQ(cfg.score.kind, ScoreKind::kMsp);
  EXPECT_EQ(cfg.score.temperature, 2.0);
  EXPECT_EQ(cfg.tpr_target, 0.9);
  ASSERT_TRUE(cfg.sweep.has_value());
  EXPECT_EQ(cfg.sweep->stage, 1u);
  EXPECT_EQ(cfg.sweep->grid, (std::vector<double>{10, 50}));
  EXPECT_EQ(cfg.sweep->metric, SelectionMetric::kAuroc);

  const RunConfig synth =
      ParseRunConfig(R"({"suite": {"synthetic": {"channels": 8, "seed": 5}}, "score": "energy"})",
                     ".");
  ASSERT_TRUE(synth.synthetic.has_value());
  EXPECT_EQ(synth.synthetic->channels, 8u);
  EXPECT_TRUE(synth.pipeline.empty());

  EXPECT_EQ(*ParseStage(R"({"method": "davis_mu_sigma", "gamma": 3})").gamma, 3.0);
  EXPECT_OODKIT_ERROR(ParseRunConfig("{}", "."), ErrorCode::kSchemaViolation);
  EXPECT_OODKIT_ERROR(ParseRunConfig(R"({"suite": 3})", "."), ErrorCode::kSchemaViolation);
  EXPECT_OODKIT_ERROR(ParseRunConfig(R"({"suite": "s", "pipeline": {}})", "."),
                      ErrorCode::kSchemaViolation);
  EXPECT_OODKIT_ERROR(ParseRunConfig("not json", "."), ErrorCode::kSchemaViolation);
}

TEST(PipelineTest, ExecuteRunFromConfigFile) {
  TempDir dir;
  {
    std::ofstream out(dir / "run.json");
    out << R"({"suite": {"synthetic": {"channels": 16, "edge": 2, "samples": 200,
               "classes": 4, "seed": 3}},
               "pipeline": [{"method": "davis_mu_sigma", "gamma": 0}],
               "sweep": {"grid": [0, 1]}})";
  }
  const RunReport r = ExecuteRun(LoadRunConfig(dir / "run.json"));
  ASSERT_TRUE(r.sweep.has_value());
  EXPECT_EQ(r.sweep->points.size(), 2u);
  EXPECT_EQ(*r.seed, 3u);
}

TEST(PipelineTest, FittedStagesRoundTrip) {
  const Suite suite = SyntheticSuite(SmallSpec());
  ShapingConfig davis = Stage(ShapingMethod::kDavisMeanStd);
  davis.gamma = 0.5;
  const RunReport r = RunSuite(
      suite, {davis, Stage(ShapingMethod::kReact, 90), Stage(ShapingMethod::kDice, 50)},
      ScoreConfig{});
  TempDir dir;
  SaveFittedStages(r.fitted_stages, dir / "fit.json");
  EXPECT_TRUE(std::filesystem::exists(dir / "fit.stage2.mask.npy"));
  const auto back = LoadFittedStages(dir / "fit.json");
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(*back[0].gamma, 0.5);
  EXPECT_EQ(*back[1].react_threshold, *r.fitted_stages[1].react_threshold);
  EXPECT_EQ(*back[2].dice_mask, *r.fitted_stages[2].dice_mask);
  // Reloaded stages score identically.
  const FittedPipeline a = FittedPipeline::FromFitted(r.fitted_stages, suite.head);
  const FittedPipeline b = FittedPipeline::FromFitted(back, suite.head);
  const ScoreSet sa = ScoreSplit(a, suite.ood[0], ScoreConfig{});
  const ScoreSet sb = ScoreSplit(b, suite.ood[0], ScoreConfig{});
  EXPECT_EQ(sa.scores, sb.scores);
}

TEST(PipelineTest, ScoreSetJsonRoundTrip) {
  const ScoreSet s{"ood:x", ScoreKind::kMspTemperature, {0.1, 0.30000000000000004, -2.5}};
  const ScoreSet back = ScoreSetFromJson(ScoreSetToJson(s));
  EXPECT_EQ(back.split_name, s.split_name);
  EXPECT_EQ(back.kind, s.kind);
  EXPECT_EQ(back.scores, s.scores);
  EXPECT_OODKIT_ERROR(ScoreSetFromJson(R"({"scores": 1})"), ErrorCode::kSchemaViolation);
  EXPECT_OODKIT_ERROR(ScoreSetFromJson(R"({"scores": ["a"]})"), ErrorCode::kSchemaViolation);
}

}  // namespace
}  // namespace oodkit
