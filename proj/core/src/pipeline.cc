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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "nlohmann/json.hpp"
#include "oodkit/error.h"
#include "oodkit/parallel.h"
#include "oodkit/scoring.h"
#include "oodkit/stats.h"
#include "oodkit/tensorio.h"

namespace oodkit {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteText(const std::string& text, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << text;
}

json ParseJson(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaViolation,
                std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string SafeName(std::string name) {
  for (char& c : name) {
    if (c == ':' || c == '/' || c == '\\' || c == ' ') c = '_';
  }
  return name;
}

std::vector<std::int64_t> ArgmaxLabels(const ActivationBatch& acts,
                                       const ClassifierHead& head) {
  const LogitBatch logits = ComputeLogits(ChannelMean(acts), head);
  std::vector<std::int64_t> labels(logits.samples());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = static_cast<std::int64_t>(Argmax(logits.values.row(i)));
  }
  return labels;
}

// ShapingInputs for every split, computed once per run or sweep.
struct PreparedSuite {
  ShapingInput fit;
  ShapingInput id;
  std::optional<ShapingInput> proxy;
  std::vector<ShapingInput> ood;
  std::string fit_name;
  std::vector<std::string> warnings;
};

PreparedSuite Prepare(const Suite& suite, bool need_proxy) {
  PreparedSuite p;
  const SplitData& fit = FitSplit(suite, &p.warnings);
  p.fit_name = fit.name;
  p.id = InputFor(suite.id);
  p.fit = &fit == &suite.id ? p.id : InputFor(fit);
  if (need_proxy) {
    if (!suite.proxy_val) {
      throw Error(ErrorCode::kMissingSplit, "suite '" + suite.name +
                                                "' has no proxy_val split for sweeps");
    }
    p.proxy = InputFor(*suite.proxy_val);
  }
  for (const auto& split : suite.ood) p.ood.push_back(InputFor(split));
  return p;
}

ScoreSet Score(const LogitBatch& logits, const ScoreConfig& score, std::string name) {
  if (score.kind == ScoreKind::kEnergy) return EnergyScore(logits, std::move(name));
  ScoreSet s = MspScore(logits, score.temperature, std::move(name));
  if (score.kind == ScoreKind::kMspTemperature) s.kind = score.kind;
  return s;
}

RunReport RunPrepared(const Suite& suite, const PreparedSuite& prepared,
                      const std::vector<ShapingConfig>& pipeline,
                      const ScoreConfig& score, double tpr_target) {
  RunReport report;
  report.suite_name = suite.name;
  report.score_kind = std::string(ScoreKindName(score.kind));
  report.temperature = score.temperature;
  report.tpr_target = tpr_target;
  report.fit_split = prepared.fit_name;
  report.warnings = prepared.warnings;
  report.digests = suite.digests;
  report.seed = suite.seed;

  const FittedPipeline fitted = FittedPipeline::Fit(pipeline, prepared.fit, suite.head);
  report.fitted_stages = fitted.stages();
  for (const auto& stage : fitted.stages()) report.pipeline.push_back(stage.Label());

  const LogitBatch id_logits = fitted.Logits(prepared.id);
  const ScoreSet id_scores = Score(id_logits, score, suite.id.name);
  std::vector<ScoreSet> ood_scores;
  for (std::size_t s = 0; s < suite.ood.size(); ++s) {
    ood_scores.push_back(
        Score(fitted.Logits(prepared.ood[s]), score, suite.ood[s].name));
  }
  report.evaluation = EvaluateSuite(id_scores, ood_scores, tpr_target);
  if (suite.id.labels) {
    report.id_accuracy_raw =
        Accuracy(ComputeLogits(prepared.id.Baseline(), suite.head), *suite.id.labels);
    report.id_accuracy_shaped = Accuracy(id_logits, *suite.id.labels);
  }
  return report;
}

void SetSweptValue(ShapingConfig& stage, double value) {
  switch (stage.method) {
    case ShapingMethod::kDavisMeanStd:
      stage.gamma = value;
      break;
    case ShapingMethod::kReact:
    case ShapingMethod::kDice:
    case ShapingMethod::kAshS:
    case ShapingMethod::kScale:
      stage.percentile = value;
      stage.react_threshold.reset();
      stage.dice_mask.reset();
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(ShapingMethodName(stage.method)) +
                      " has no hyperparameter to sweep");
  }
}

std::string SweptParameter(ShapingMethod method) {
  return method == ShapingMethod::kDavisMeanStd ? "gamma" : "percentile";
}

double OptionalNumber(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number()) {
    throw Error(ErrorCode::kSchemaViolation, std::string("'") + key + "' must be a number");
  }
  return doc[key].get<double>();
}

ShapingConfig StageFromJson(const json& doc) {
  if (!doc.is_object() || !doc.contains("method") || !doc["method"].is_string()) {
    throw Error(ErrorCode::kSchemaViolation, "pipeline stage needs a string 'method'");
  }
  ShapingConfig stage;
  stage.method = ParseShapingMethod(doc["method"].get<std::string>());
  json params = doc.contains("params") ? doc["params"] : doc;
  if (!params.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "stage 'params' must be an object");
  }
  if (params.contains("gamma")) stage.gamma = OptionalNumber(params, "gamma", 0.0);
  if (params.contains("percentile")) {
    stage.percentile = OptionalNumber(params, "percentile", 0.0);
  }
  if (params.contains("react_threshold")) {
    stage.react_threshold = OptionalNumber(params, "react_threshold", 0.0);
  }
  if (params.contains("percentile_rule")) {
    stage.rule = ParsePercentileRule(params["percentile_rule"].get<std::string>());
  }
  stage.Validate();
  return stage;
}

ojson StageJson(const ShapingConfig& s) {
  ojson o;
  o["method"] = ShapingMethodName(s.method);
  if (s.gamma) o["gamma"] = *s.gamma;
  if (s.percentile) o["percentile"] = *s.percentile;
  o["percentile_rule"] = PercentileRuleName(s.rule);
  if (s.react_threshold) o["react_threshold"] = *s.react_threshold;
  if (s.dice_mask) o["dice_keep_count"] = s.dice_mask->keep_count();
  return o;
}

ojson EvalJson(const EvalResult& r) {
  return {{"ood_set", r.ood_set}, {"fpr95", r.fpr95},       {"auroc", r.auroc},
          {"lambda", r.lambda},   {"id_count", r.id_count}, {"ood_count", r.ood_count}};
}

// Shortest text that parses back to the same double.
std::string Shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ShapingInput InputFor(const SplitData& split) {
  if (split.activations) return ShapingInput::FromActivations(*split.activations);
  if (split.features) return ShapingInput::FromFeatures(*split.features);
  throw Error(ErrorCode::kSchemaViolation, "split '" + split.name + "' holds no data");
}

const SplitData& FitSplit(const Suite& suite, std::vector<std::string>* warnings) {
  if (suite.id_train) return *suite.id_train;
  if (warnings != nullptr) {
    warnings->push_back("no id_train split; fitting on '" + suite.id.name + "'");
  }
  return suite.id;
}

Suite LoadSuite(const fs::path& suite_manifest) {
  const SuiteManifest sm = LoadSuiteManifest(suite_manifest);
  const fs::path base = suite_manifest.parent_path();
  Suite suite;
  suite.name = sm.name;
  auto digest = [&](const fs::path& p) {
    const fs::path rel = base.empty() ? p : p.lexically_relative(base);
    suite.digests[rel.generic_string()] = FileDigest(p);
  };
  digest(suite_manifest);
  auto load = [&](const fs::path& manifest_path) {
    const DatasetManifest m = LoadManifest(manifest_path);
    SplitData split = LoadSplit(m);
    digest(manifest_path);
    for (const auto& p : {m.activations, m.features, m.labels}) {
      if (p) digest(*p);
    }
    return std::make_pair(m, std::move(split));
  };
  auto [id_manifest, id_split] = load(sm.id);
  suite.id = std::move(id_split);
  suite.head = LoadHead(id_manifest);
  digest(id_manifest.head_weights);
  digest(id_manifest.head_bias);
  if (sm.id_train) suite.id_train = load(*sm.id_train).second;
  if (sm.proxy_val) suite.proxy_val = load(*sm.proxy_val).second;
  for (const auto& p : sm.ood) suite.ood.push_back(load(p).second);

  auto check = [&](const SplitData& s) {
    if (s.channels() != suite.head.inputs()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "split '" + s.name + "' has " + std::to_string(s.channels()) +
                      " channels, head expects " + std::to_string(suite.head.inputs()));
    }
  };
  check(suite.id);
  if (suite.id_train) check(*suite.id_train);
  if (suite.proxy_val) check(*suite.proxy_val);
  for (const auto& s : suite.ood) check(s);
  return suite;
}

Suite SyntheticSuite(const SyntheticSpec& spec) {
  spec.Validate();
  Suite suite;
  suite.name = "synthetic";
  suite.seed = spec.seed;
  suite.head = GenerateHead(spec);
  auto make = [&](std::string name, SyntheticStream stream, double mean, double sd,
                  bool labelled) {
    SplitData s;
    s.name = std::move(name);
    s.activations = GenerateActivations(spec, stream, mean, sd);
    if (labelled) s.labels = ArgmaxLabels(*s.activations, suite.head);
    return s;
  };
  suite.id_train = make("id_train", SyntheticStream::kIdTrain, spec.id_map_mean,
                        spec.id_map_std, true);
  suite.id = make("id_test", SyntheticStream::kIdTest, spec.id_map_mean, spec.id_map_std,
                  true);
  suite.proxy_val = make("proxy_val", SyntheticStream::kProxy, spec.ood_map_mean,
                         spec.ood_map_std, false);
  suite.ood.push_back(make("ood:synthetic", SyntheticStream::kOod, spec.ood_map_mean,
                           spec.ood_map_std, false));
  return suite;
}

fs::path WriteSuite(const Suite& suite, const fs::path& dir) {
  fs::create_directories(dir);
  WriteTensor(FromMatrix(suite.head.weights()), dir / "head_weights.npy");
  WriteTensor(FromVector(suite.head.bias()), dir / "head_bias.npy");
  auto write_split = [&](const SplitData& s) {
    const std::string stem = SafeName(s.name);
    DatasetManifest m;
    m.split_name = s.name;
    m.head_weights = dir / "head_weights.npy";
    m.head_bias = dir / "head_bias.npy";
    if (s.activations) {
      m.activations = dir / (stem + ".activations.npy");
      WriteTensor(FromActivationBatch(*s.activations), *m.activations);
    }
    if (s.features) {
      m.features = dir / (stem + ".features.npy");
      WriteTensor(FromMatrix(s.features->values), *m.features);
    }
    if (s.labels) {
      m.labels = dir / (stem + ".labels.npy");
      WriteLabels(*s.labels, *m.labels);
    }
    if (suite.seed) m.metadata["seed"] = std::to_string(*suite.seed);
    m.metadata["generator"] = "oodkit";
    const std::string file = stem + ".json";
    WriteText(ManifestToJson(m, dir), dir / file);
    return file;
  };
  ojson doc;
  doc["name"] = suite.name;
  doc["id"] = write_split(suite.id);
  if (suite.id_train) doc["id_train"] = write_split(*suite.id_train);
  if (suite.proxy_val) doc["proxy_val"] = write_split(*suite.proxy_val);
  doc["ood"] = ojson::array();
  for (const auto& s : suite.ood) doc["ood"].push_back(write_split(s));
  const fs::path suite_path = dir / "suite.json";
  WriteText(doc.dump(2) + "\n", suite_path);
  return suite_path;
}

ScoreSet ScoreSplit(const FittedPipeline& pipeline, const SplitData& split,
                    const ScoreConfig& score) {
  return Score(pipeline.Logits(InputFor(split)), score, split.name);
}

std::string_view SelectionMetricName(SelectionMetric m) {
  return m == SelectionMetric::kFpr95 ? "fpr95" : "auroc";
}

SelectionMetric ParseSelectionMetric(std::string_view name) {
  if (name == "fpr95") return SelectionMetric::kFpr95;
  if (name == "auroc") return SelectionMetric::kAuroc;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown selection metric '" + std::string(name) + "'");
}

std::size_t SelectSweepPoint(std::span<const SweepPoint> points, SelectionMetric metric) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sweep grid");
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double a = metric == SelectionMetric::kFpr95 ? -points[i].proxy.fpr95
                                                       : points[i].proxy.auroc;
    const double b = metric == SelectionMetric::kFpr95 ? -points[best].proxy.fpr95
                                                       : points[best].proxy.auroc;
    if (a > b || (a == b && points[i].value < points[best].value)) best = i;
  }
  return best;
}

RunReport RunSuite(const Suite& suite, const std::vector<ShapingConfig>& pipeline,
                   const ScoreConfig& score, double tpr_target) {
  return RunPrepared(suite, Prepare(suite, false), pipeline, score, tpr_target);
}

RunReport SweepStage(const Suite& suite, const std::vector<ShapingConfig>& pipeline,
                     std::size_t stage, std::span<const double> grid,
                     SelectionMetric metric, const ScoreConfig& score,
                     double tpr_target) {
  if (stage >= pipeline.size()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep stage " + std::to_string(stage) +
                                                 " outside pipeline of " +
                                                 std::to_string(pipeline.size()));
  }
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sweep grid");
  const PreparedSuite prepared = Prepare(suite, true);
  SweepSummary summary;
  summary.parameter = SweptParameter(pipeline[stage].method);
  summary.stage = stage;
  summary.metric = metric;
  summary.points.resize(grid.size());
  ParallelFor(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      std::vector<ShapingConfig> stages = pipeline;
      SetSweptValue(stages[stage], grid[g]);
      const FittedPipeline fitted = FittedPipeline::Fit(stages, prepared.fit, suite.head);
      const ScoreSet id = Score(fitted.Logits(prepared.id), score, suite.id.name);
      const ScoreSet proxy =
          Score(fitted.Logits(*prepared.proxy), score, suite.proxy_val->name);
      summary.points[g] = {grid[g], stages[stage].Label(), Evaluate(id, proxy, tpr_target)};
    }
  });
  const std::size_t best = SelectSweepPoint(summary.points, metric);
  summary.chosen = summary.points[best].value;
  std::vector<ShapingConfig> chosen = pipeline;
  SetSweptValue(chosen[stage], summary.chosen);
  RunReport report = RunPrepared(suite, prepared, chosen, score, tpr_target);
  report.sweep = std::move(summary);
  return report;
}

RunReport SweepGamma(const Suite& suite, std::span<const double> grid,
                     SelectionMetric metric, double tpr_target) {
  ShapingConfig davis;
  davis.method = ShapingMethod::kDavisMeanStd;
  davis.gamma = 0.0;
  return SweepStage(suite, {davis}, 0, grid, metric, ScoreConfig{}, tpr_target);
}

RunReport SweepPercentile(const Suite& suite, ShapingMethod method,
                          std::span<const double> grid, SelectionMetric metric,
                          const std::vector<ShapingConfig>& prefix, double tpr_target) {
  std::vector<ShapingConfig> stages = prefix;
  ShapingConfig swept;
  swept.method = method;
  swept.percentile = grid.empty() ? 50.0 : grid.front();
  stages.push_back(swept);
  return SweepStage(suite, stages, stages.size() - 1, grid, metric, ScoreConfig{},
                    tpr_target);
}

std::string RunReportToJson(const RunReport& r) {
  ojson doc;
  doc["toolkit_version"] = kToolkitVersion;
  doc["suite"] = r.suite_name;
  if (r.seed) doc["seed"] = *r.seed;
  doc["digests"] = ojson::object();
  for (const auto& [k, v] : r.digests) doc["digests"][k] = v;
  doc["pipeline"] = r.pipeline;
  doc["fitted_stages"] = ojson::array();
  for (const auto& s : r.fitted_stages) doc["fitted_stages"].push_back(StageJson(s));
  doc["score"] = {{"kind", r.score_kind}, {"temperature", r.temperature}};
  doc["tpr_target"] = r.tpr_target;
  doc["fit_split"] = r.fit_split;
  if (r.sweep) {
    ojson sweep;
    sweep["parameter"] = r.sweep->parameter;
    sweep["stage"] = r.sweep->stage;
    sweep["metric"] = SelectionMetricName(r.sweep->metric);
    sweep["chosen"] = r.sweep->chosen;
    sweep["points"] = ojson::array();
    for (const auto& p : r.sweep->points) {
      ojson point = {{"value", p.value}, {"label", p.label}};
      point["proxy"] = EvalJson(p.proxy);
      sweep["points"].push_back(point);
    }
    doc["sweep"] = sweep;
  }
  doc["results"] = ojson::array();
  for (const auto& e : r.evaluation.per_set) doc["results"].push_back(EvalJson(e));
  doc["average"] = {{"fpr95", r.evaluation.mean_fpr95},
                    {"auroc", r.evaluation.mean_auroc}};
  if (r.id_accuracy_raw) doc["id_accuracy_raw"] = *r.id_accuracy_raw;
  if (r.id_accuracy_shaped) doc["id_accuracy_shaped"] = *r.id_accuracy_shaped;
  doc["warnings"] = r.warnings;
  return doc.dump(2) + "\n";
}

std::string RunReportToCsv(const RunReport& r) {
  std::ostringstream os;
  os << "method";
  for (const auto& e : r.evaluation.per_set) {
    os << ',' << e.ood_set << "_fpr95," << e.ood_set << "_auroc";
  }
  os << ",average_fpr95,average_auroc\n";
  std::string method;
  for (const auto& label : r.pipeline) method += label + "+";
  method += r.score_kind;
  os << '"' << method << '"';
  for (const auto& e : r.evaluation.per_set) {
    os << ',' << Shortest(e.fpr95) << ',' << Shortest(e.auroc);
  }
  os << ',' << Shortest(r.evaluation.mean_fpr95) << ','
     << Shortest(r.evaluation.mean_auroc) << '\n';
  return os.str();
}

ShapingConfig ParseStage(std::string_view text) {
  return StageFromJson(ParseJson(text, "pipeline stage"));
}

RunConfig ParseRunConfig(std::string_view text, const fs::path& base_dir) {
  const json doc = ParseJson(text, "run config");
  if (!doc.is_object()) throw Error(ErrorCode::kSchemaViolation, "run config must be an object");
  RunConfig cfg;
  if (!doc.contains("suite")) throw Error(ErrorCode::kSchemaViolation, "run config needs 'suite'");
  const json& suite = doc["suite"];
  if (suite.is_string()) {
    const fs::path p(suite.get<std::string>());
    cfg.suite_path = p.is_absolute() ? p : base_dir / p;
  } else if (suite.is_object() && suite.contains("synthetic")) {
    cfg.synthetic = SyntheticSpecFromJson(suite["synthetic"].dump());
  } else {
    throw Error(ErrorCode::kSchemaViolation,
                "'suite' must be a path or {\"synthetic\": {...}}");
  }
  if (doc.contains("pipeline")) {
    if (!doc["pipeline"].is_array()) {
      throw Error(ErrorCode::kSchemaViolation, "'pipeline' must be an array");
    }
    for (const auto& stage : doc["pipeline"]) cfg.pipeline.push_back(StageFromJson(stage));
  }
  if (doc.contains("score")) {
    const json& score = doc["score"];
    if (score.is_string()) {
      cfg.score.kind = ParseScoreKind(score.get<std::string>());
    } else if (score.is_object()) {
      cfg.score.kind = ParseScoreKind(score.value("method", std::string("energy")));
      cfg.score.temperature = OptionalNumber(score, "temperature", 1.0);
    } else {
      throw Error(ErrorCode::kSchemaViolation, "'score' must be a string or object");
    }
  }
  cfg.tpr_target = OptionalNumber(doc, "tpr", 0.95);
  if (doc.contains("sweep") && !doc["sweep"].is_null()) {
    const json& sw = doc["sweep"];
    RunConfig::Sweep sweep;
    sweep.stage = sw.value("stage", std::size_t{0});
    if (!sw.contains("grid") || !sw["grid"].is_array()) {
      throw Error(ErrorCode::kSchemaViolation, "'sweep.grid' must be an array");
    }
    sweep.grid = sw["grid"].get<std::vector<double>>();
    sweep.metric = ParseSelectionMetric(sw.value("metric", std::string("fpr95")));
    cfg.sweep = std::move(sweep);
  }
  return cfg;
}

RunConfig LoadRunConfig(const fs::path& path) {
  return ParseRunConfig(ReadText(path), path.parent_path());
}

RunReport ExecuteRun(const RunConfig& cfg) {
  const Suite suite = cfg.suite_path ? LoadSuite(*cfg.suite_path)
                                     : SyntheticSuite(cfg.synthetic.value());
  if (cfg.sweep) {
    return SweepStage(suite, cfg.pipeline, cfg.sweep->stage, cfg.sweep->grid,
                      cfg.sweep->metric, cfg.score, cfg.tpr_target);
  }
  return RunSuite(suite, cfg.pipeline, cfg.score, cfg.tpr_target);
}

void SaveFittedStages(const std::vector<ShapingConfig>& stages, const fs::path& json_path) {
  ojson doc;
  doc["stages"] = ojson::array();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    ojson s = StageJson(stages[i]);
    if (stages[i].dice_mask) {
      const std::string file =
          json_path.stem().string() + ".stage" + std::to_string(i) + ".mask.npy";
      WriteTensor(FromMatrix(stages[i].dice_mask->ToMatrix()),
                  json_path.parent_path() / file);
      s["dice_mask"] = file;
    }
    doc["stages"].push_back(s);
  }
  WriteText(doc.dump(2) + "\n", json_path);
}

std::vector<ShapingConfig> LoadFittedStages(const fs::path& json_path) {
  const json doc = ParseJson(ReadText(json_path), "fit file");
  if (!doc.contains("stages") || !doc["stages"].is_array()) {
    throw Error(ErrorCode::kSchemaViolation, "fit file needs a 'stages' array");
  }
  std::vector<ShapingConfig> stages;
  for (const auto& s : doc["stages"]) {
    ShapingConfig stage = StageFromJson(s);
    if (s.contains("dice_mask")) {
      const TensorFile t =
          ReadTensor(json_path.parent_path() / s["dice_mask"].get<std::string>());
      stage.dice_mask = DiceMask::FromMatrix(ToFeatureBatch(t).values);
    }
    stages.push_back(std::move(stage));
  }
  return stages;
}

std::string ScoreSetToJson(const ScoreSet& scores) {
  ojson doc;
  doc["split_name"] = scores.split_name;
  doc["score_kind"] = ScoreKindName(scores.kind);
  doc["scores"] = scores.scores;
  return doc.dump() + "\n";
}

ScoreSet ScoreSetFromJson(std::string_view text) {
  const json doc = ParseJson(text, "scores");
  if (!doc.is_object() || !doc.contains("scores") || !doc["scores"].is_array()) {
    throw Error(ErrorCode::kSchemaViolation, "scores file needs a 'scores' array");
  }
  ScoreSet s;
  s.split_name = doc.value("split_name", std::string());
  s.kind = ParseScoreKind(doc.value("score_kind", std::string("energy")));
  try {
    s.scores = doc["scores"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("scores: ") + e.what());
  }
  return s;
}

}  // namespace oodkit
