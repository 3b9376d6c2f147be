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

// oodkit: command-line front end for feature shaping, scoring, evaluation and
// the theory checks. Exit codes: 0 success, 1 error, 2 failed verification.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_io.h"
#include "oodkit/analysis.h"
#include "oodkit/error.h"
#include "oodkit/metrics.h"
#include "oodkit/parallel.h"
#include "oodkit/pipeline.h"
#include "oodkit/scoring.h"
#include "oodkit/shaping.h"
#include "oodkit/stats.h"
#include "oodkit/tensorio.h"

namespace fs = std::filesystem;

namespace oodkit::cli {
namespace {

constexpr int kExitError = 1;
constexpr int kExitVerifyFailed = 2;

struct StatsArgs {
  std::string input, stat = "mean", output;
};

struct ShapeArgs {
  std::string method, input, output, fit_split, save_fit, load_fit, head_from, head_out;
  std::optional<double> gamma, percentile, react_threshold;
  std::string rule = "linear";
};

struct ScoreArgs {
  std::string method = "energy", features, head_from, output, fit;
  double temperature = 1.0;
};

struct EvalArgs {
  std::string id, report;
  std::vector<std::string> ood;
  double tpr = 0.95;
};

struct GapsArgs {
  std::string id, ood, head_from, report;
  double gamma = 0.0;
};

struct SweepArgs {
  std::string suite, synthetic, method, metric = "fpr95", score = "energy", report, csv;
  std::vector<double> grid;
  std::vector<std::string> prefix;
  double temperature = 1.0, tpr = 0.95;
};

struct VerifyArgs {
  std::string suite = "theory", spec, report;
  std::size_t seeds = 100;
};

struct RunArgs {
  std::string config, report, csv;
};

struct SynthArgs {
  std::string spec, out;
  std::optional<std::uint64_t> seed;
};

SyntheticSpec LoadSpec(const std::string& path) {
  return path.empty() ? SyntheticSpec{} : SyntheticSpecFromJson(ReadFile(path));
}

void WriteReport(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    WriteFile(path, text);
  }
}

int RunStats(const StatsArgs& a) {
  const ActivationBatch acts = LoadActivations(a.input);
  if (a.stat == "all") {
    fs::create_directories(a.output);
    for (StatKind kind : {StatKind::kMean, StatKind::kMax, StatKind::kStd,
                          StatKind::kMedian, StatKind::kEntropy}) {
      const fs::path out = fs::path(a.output) / (std::string(StatKindName(kind)) + ".npy");
      WriteTensor(FromMatrix(ComputeStatistic(acts, kind).values), out);
    }
    return 0;
  }
  StatKind kind = StatKind::kMean;
  if (a.stat == "max") kind = StatKind::kMax;
  if (a.stat == "std") kind = StatKind::kStd;
  if (a.stat == "median") kind = StatKind::kMedian;
  if (a.stat == "entropy") kind = StatKind::kEntropy;
  WriteTensor(FromMatrix(ComputeStatistic(acts, kind).values), a.output);
  return 0;
}

// Only DICE reads the head. Other methods get a zero placeholder.
ClassifierHead HeadOrPlaceholder(const std::string& head_from, std::size_t inputs) {
  if (!head_from.empty()) return LoadHeadFrom(head_from);
  return ClassifierHead(Matrix(inputs, 2), std::vector<double>(2, 0.0));
}

int RunShape(const ShapeArgs& a) {
  const ShapingInput input = InputFor(LoadAnySplit(a.input));
  const std::size_t width = input.Baseline().values.cols();
  std::vector<ShapingConfig> stages;
  if (!a.load_fit.empty()) {
    stages = LoadFittedStages(a.load_fit);
  } else {
    if (a.method.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "shape needs --method or --load-fit");
    }
    ShapingConfig stage;
    stage.method = ParseShapingMethod(a.method);
    stage.gamma = a.gamma;
    stage.percentile = a.percentile;
    stage.rule = ParsePercentileRule(a.rule);
    stage.react_threshold = a.react_threshold;
    stages.push_back(stage);
  }
  bool needs_fit = false;
  bool needs_head = false;
  for (const auto& s : stages) {
    needs_fit |= (s.method == ShapingMethod::kReact && !s.react_threshold) ||
                 (s.method == ShapingMethod::kDice && !s.dice_mask);
    needs_head |= s.method == ShapingMethod::kDice;
  }
  if (needs_head && a.head_from.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "dice needs --head-from");
  }
  const ClassifierHead head = HeadOrPlaceholder(a.head_from, width);
  FittedPipeline fitted;
  if (needs_fit) {
    if (a.fit_split.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "react/dice need --fit-split (ID training split) or --load-fit");
    }
    fitted = FittedPipeline::Fit(stages, InputFor(LoadAnySplit(a.fit_split)), head);
  } else {
    fitted = FittedPipeline::FromFitted(stages, head);
  }
  WriteTensor(FromMatrix(fitted.Transform(input).values), a.output);
  if (!a.save_fit.empty()) SaveFittedStages(fitted.stages(), a.save_fit);
  if (!a.head_out.empty()) WriteTensor(FromMatrix(fitted.head().weights()), a.head_out);
  return 0;
}

int RunScore(const ScoreArgs& a) {
  const SplitData split = LoadAnySplit(a.features);
  const ClassifierHead head = LoadHeadFrom(a.head_from);
  std::vector<ShapingConfig> stages;
  if (!a.fit.empty()) stages = LoadFittedStages(a.fit);
  const FittedPipeline pipeline = FittedPipeline::FromFitted(stages, head);
  ScoreConfig score{ParseScoreKind(a.method), a.temperature};
  if (score.kind == ScoreKind::kMsp && a.temperature != 1.0) {
    score.kind = ScoreKind::kMspTemperature;
  }
  WriteReport(a.output, ScoreSetToJson(ScoreSplit(pipeline, split, score)));
  return 0;
}

int RunEval(const EvalArgs& a) {
  const ScoreSet id = ScoreSetFromJson(ReadFile(a.id));
  std::vector<ScoreSet> ood;
  for (const auto& path : a.ood) {
    ScoreSet s = ScoreSetFromJson(ReadFile(path));
    if (s.split_name.empty()) s.split_name = fs::path(path).stem().string();
    ood.push_back(std::move(s));
  }
  const SuiteEvaluation eval = EvaluateSuite(id, ood, a.tpr);
  const bool csv = HasExtension(a.report, ".csv");
  WriteReport(a.report, csv ? EvaluationCsv(eval) : EvaluationJson(eval, a.tpr));
  if (!a.report.empty() && a.report != "-") std::cout << EvaluationCsv(eval);
  return 0;
}

int RunGaps(const GapsArgs& a) {
  const ActivationBatch id = LoadActivations(a.id);
  const ActivationBatch ood = LoadActivations(a.ood);
  if (a.head_from.empty() && !HasExtension(a.id, ".json")) {
    throw Error(ErrorCode::kInvalidArgument, "gaps needs --head-from unless --id is a manifest");
  }
  const ClassifierHead head = LoadHeadFrom(a.head_from.empty() ? a.id : a.head_from);
  WriteReport(a.report, GapReportToJson(ComputeGapReport(id, ood, head, a.gamma)));
  return 0;
}

ShapingConfig PrefixStage(const std::string& text) {
  ShapingConfig stage;
  const auto eq = text.find('=');
  stage.method = ParseShapingMethod(text.substr(0, eq));
  if (eq != std::string::npos) {
    const double v = std::stod(text.substr(eq + 1));
    if (stage.method == ShapingMethod::kDavisMeanStd) {
      stage.gamma = v;
    } else {
      stage.percentile = v;
    }
  }
  return stage;
}

Suite SuiteFrom(const std::string& suite_path, const std::string& synthetic) {
  if (!suite_path.empty()) return LoadSuite(suite_path);
  return SyntheticSuite(LoadSpec(synthetic));
}

int RunSweep(const SweepArgs& a) {
  const Suite suite = SuiteFrom(a.suite, a.synthetic);
  std::vector<ShapingConfig> stages;
  for (const auto& p : a.prefix) stages.push_back(PrefixStage(p));
  ShapingConfig swept;
  swept.method = ParseShapingMethod(a.method);
  if (swept.method == ShapingMethod::kDavisMeanStd) {
    swept.gamma = a.grid.front();
  } else {
    swept.percentile = a.grid.front();
  }
  stages.push_back(swept);
  const ScoreConfig score{ParseScoreKind(a.score), a.temperature};
  const RunReport report = SweepStage(suite, stages, stages.size() - 1, a.grid,
                                      ParseSelectionMetric(a.metric), score, a.tpr);
  WriteReport(a.report, RunReportToJson(report));
  if (!a.csv.empty()) WriteFile(a.csv, RunReportToCsv(report));
  return 0;
}

void PrintCheck(const char* name, bool pass, double value, double tolerance) {
  std::printf("%-28s %s  value=%.3g  tol=%.3g\n", name, pass ? "PASS" : "FAIL", value,
              tolerance);
}

int RunVerify(const VerifyArgs& a) {
  if (a.suite != "theory") {
    throw Error(ErrorCode::kInvalidArgument, "unknown verification suite '" + a.suite + "'");
  }
  const SyntheticSpec spec = LoadSpec(a.spec);
  const auto seeds = TheorySeeds(a.seeds);
  const TheorySuiteReport r = RunTheorySuite(spec, seeds);
  WriteReport(a.report, TheorySuiteReportToJson(r));
  double lemma = 0.0;
  for (const auto& c : r.lemma1) lemma = std::max(lemma, c.relative_error);
  PrintCheck("lemma1", lemma <= kLemma1Tolerance, lemma, kLemma1Tolerance);
  PrintCheck("logit-gap linearity", r.linearity_error <= kLinearityTolerance,
             r.linearity_error, kLinearityTolerance);
  PrintCheck("assumption1 energy shift", r.assumption1_energy_error <= kEnergyShiftTolerance,
             r.assumption1_energy_error, kEnergyShiftTolerance);
  PrintCheck("uniform delta", r.uniform_delta_error <= kUniformDeltaTolerance,
             r.uniform_delta_error, kUniformDeltaTolerance);
  const double win_fraction =
      static_cast<double>(r.auroc_wins) / static_cast<double>(r.trials.size());
  PrintCheck("davis_m auroc wins", r.statistical_pass, win_fraction, kRequiredWinFraction);
  std::printf("mean fpr95 improvement %.4f over %zu seeds\n", r.mean_fpr95_improvement,
              r.trials.size());
  return r.identities_pass && r.statistical_pass ? 0 : kExitVerifyFailed;
}

int RunRun(const RunArgs& a) {
  const RunReport report = ExecuteRun(LoadRunConfig(a.config));
  WriteReport(a.report, RunReportToJson(report));
  if (!a.csv.empty()) WriteFile(a.csv, RunReportToCsv(report));
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

int RunSynth(const SynthArgs& a) {
  SyntheticSpec spec = LoadSpec(a.spec);
  if (a.seed) spec.seed = *a.seed;
  std::cout << WriteSuite(SyntheticSuite(spec), a.out).string() << '\n';
  return 0;
}

}  // namespace
}  // namespace oodkit::cli

int main(int argc, char** argv) {
  using namespace oodkit::cli;
  CLI::App app{"oodkit: post-hoc OOD detection with activation-map feature shaping"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);

  const auto methods = CLI::IsMember(
      {"identity", "davis_m", "davis_mu_sigma", "react", "dice", "ash_s", "scale"});

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Per-channel statistics of activation maps");
  s->add_option("--input", stats.input, "Activations .npy or manifest")->required();
  s->add_option("--stat", stats.stat)
      ->check(CLI::IsMember({"mean", "max", "std", "median", "entropy", "all"}));
  s->add_option("--output", stats.output, "Features .npy (a directory for 'all')")
      ->required();

  ShapeArgs shape;
  auto* sh = app.add_subcommand("shape", "Apply one shaping method to features");
  sh->add_option("--method", shape.method)->check(methods);
  sh->add_option("--gamma", shape.gamma);
  sh->add_option("--percentile", shape.percentile);
  sh->add_option("--percentile-rule", shape.rule)
      ->check(CLI::IsMember({"linear", "nearest"}));
  sh->add_option("--react-threshold", shape.react_threshold);
  sh->add_option("--fit-split", shape.fit_split, "ID split used to fit ReAct/DICE");
  sh->add_option("--input", shape.input, "Activations or features")->required();
  sh->add_option("--output", shape.output)->required();
  sh->add_option("--head-from", shape.head_from, "Manifest or weights .npy");
  sh->add_option("--save-fit", shape.save_fit, "Write fitted stages as JSON");
  sh->add_option("--load-fit", shape.load_fit, "Reuse previously fitted stages");
  sh->add_option("--head-out", shape.head_out, "Write the (DICE-masked) weights");

  ScoreArgs score;
  auto* sc = app.add_subcommand("score", "Score a split through the classifier head");
  sc->add_option("--method", score.method)
      ->check(CLI::IsMember({"energy", "msp", "msp-temp"}));
  sc->add_option("--temperature", score.temperature);
  sc->add_option("--features", score.features, "Features, activations or manifest")
      ->required();
  sc->add_option("--head-from", score.head_from)->required();
  sc->add_option("--fit", score.fit, "Fitted stages from 'shape --save-fit'");
  sc->add_option("--output", score.output)->required();

  EvalArgs eval;
  auto* ev = app.add_subcommand("eval", "FPR@TPR and AUROC of ID vs OOD scores");
  ev->add_option("--id", eval.id)->required();
  ev->add_option("--ood", eval.ood)->required();
  ev->add_option("--tpr", eval.tpr)->check(CLI::Range(0.0, 1.0));
  ev->add_option("--report", eval.report, "report.json or report.csv");

  GapsArgs gaps;
  auto* ga = app.add_subcommand("gaps", "Separation gaps of ID vs OOD statistics");
  ga->add_option("--id", gaps.id)->required();
  ga->add_option("--ood", gaps.ood)->required();
  ga->add_option("--head-from", gaps.head_from, "Defaults to the head named by --id");
  ga->add_option("--gamma", gaps.gamma);
  ga->add_option("--report", gaps.report);

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "Select a hyperparameter on the proxy split");
  auto* sw_suite = sw->add_option("--suite", sweep.suite, "Suite manifest");
  auto* sw_synth = sw->add_option("--synthetic", sweep.synthetic, "Synthetic spec JSON");
  sw_suite->excludes(sw_synth);
  sw->add_option("--method", sweep.method, "Swept stage")->required()->check(methods);
  sw->add_option("--grid", sweep.grid)->required()->delimiter(',');
  sw->add_option("--prefix", sweep.prefix, "Fixed stages before it, e.g. davis_m");
  sw->add_option("--metric", sweep.metric)->check(CLI::IsMember({"fpr95", "auroc"}));
  sw->add_option("--score", sweep.score)
      ->check(CLI::IsMember({"energy", "msp", "msp-temp"}));
  sw->add_option("--temperature", sweep.temperature);
  sw->add_option("--tpr", sweep.tpr)->check(CLI::Range(0.0, 1.0));
  sw->add_option("--report", sweep.report);
  sw->add_option("--csv", sweep.csv);

  VerifyArgs verify;
  auto* ve = app.add_subcommand("verify", "Run the theory acceptance checks");
  ve->add_option("--suite", verify.suite)->check(CLI::IsMember({"theory"}));
  ve->add_option("--seeds", verify.seeds)->check(CLI::PositiveNumber);
  ve->add_option("--spec", verify.spec, "Synthetic spec JSON");
  ve->add_option("--report", verify.report);

  RunArgs run;
  auto* ru = app.add_subcommand("run", "Evaluate a suite from a JSON config");
  ru->add_option("--config", run.config)->required()->check(CLI::ExistingFile);
  ru->add_option("--report", run.report);
  ru->add_option("--csv", run.csv);

  SynthArgs synth;
  auto* sy = app.add_subcommand("synth", "Write a synthetic suite to disk");
  sy->add_option("--spec", synth.spec);
  sy->add_option("--seed", synth.seed);
  sy->add_option("--out", synth.out)->required();

  CLI11_PARSE(app, argc, argv);
  oodkit::SetMaxThreads(threads);
  try {
    if (s->parsed()) return RunStats(stats);
    if (sh->parsed()) return RunShape(shape);
    if (sc->parsed()) return RunScore(score);
    if (ev->parsed()) return RunEval(eval);
    if (ga->parsed()) return RunGaps(gaps);
    if (sw->parsed()) return RunSweep(sweep);
    if (ve->parsed()) return RunVerify(verify);
    if (ru->parsed()) return RunRun(run);
    if (sy->parsed()) return RunSynth(synth);
  } catch (const std::exception& e) {
    std::cerr << "oodkit: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
