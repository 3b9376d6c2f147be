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

#include "oodkit/analysis.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlohmann/json.hpp"
#include "oodkit/error.h"
#include "oodkit/metrics.h"
#include "oodkit/parallel.h"
#include "oodkit/random.h"
#include "oodkit/scoring.h"
#include "oodkit/shaping.h"

namespace oodkit {
namespace {

using ojson = nlohmann::ordered_json;

double Average(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double MaxAbs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// max_c |a_c - b_c| relative to the largest |b_c|, with an absolute floor
// scaled by `magnitude` so exact-zero gaps compare cleanly.
double RelativeError(std::span<const double> a, std::span<const double> b,
                     double magnitude) {
  double err = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) err = std::max(err, std::abs(a[c] - b[c]));
  const double denom = std::max({MaxAbs(b), 1e-12 * magnitude, 1e-300});
  return err / denom;
}

void RequireSameChannels(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kShapeMismatch, "ID has " + std::to_string(a) +
                                               " channels, OOD has " +
                                               std::to_string(b));
  }
}

std::vector<double> Difference(std::span<const double> a, std::span<const double> b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

double ScoreGap(const FeatureBatch& id, const FeatureBatch& ood,
                const ClassifierHead& head) {
  return Average(EnergyScore(ComputeLogits(id, head)).scores) -
         Average(EnergyScore(ComputeLogits(ood, head)).scores);
}

double ViolationRate(std::span<const double> larger, std::span<const double> smaller) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < larger.size(); ++i) bad += larger[i] < smaller[i] ? 1 : 0;
  return larger.empty() ? 0.0 : static_cast<double>(bad) / static_cast<double>(larger.size());
}

ojson GapJson(const GapVector& g) {
  return {{"mean", g.mean}, {"per_channel", g.per_channel}};
}

}  // namespace

std::vector<double> ColumnMeans(const Matrix& m) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[j];
  }
  for (double& v : out) v /= static_cast<double>(m.rows());
  return out;
}

GapVector SeparationGap(const FeatureBatch& id, const FeatureBatch& ood) {
  RequireSameChannels(id.channels(), ood.channels());
  if (id.samples() == 0 || ood.samples() == 0) {
    throw Error(ErrorCode::kEmptyBatch, "separation gap needs nonempty batches");
  }
  GapVector g;
  g.per_channel = Difference(ColumnMeans(id.values), ColumnMeans(ood.values));
  g.mean = Average(g.per_channel);
  return g;
}

std::vector<double> TransferGap(const ClassifierHead& head,
                                std::span<const double> feature_gap) {
  if (feature_gap.size() != head.inputs()) {
    throw Error(ErrorCode::kShapeMismatch, "gap length " +
                                               std::to_string(feature_gap.size()) +
                                               " vs head n = " +
                                               std::to_string(head.inputs()));
  }
  std::vector<double> out(head.classes(), 0.0);
  for (std::size_t j = 0; j < head.inputs(); ++j) {
    for (std::size_t c = 0; c < head.classes(); ++c) {
      out[c] += head.weights()(j, c) * feature_gap[j];
    }
  }
  return out;
}

LogitGap ComputeLogitGap(const FeatureBatch& id, const FeatureBatch& ood,
                         const ClassifierHead& head) {
  const auto in = ColumnMeans(ComputeLogits(id, head).values);
  const auto out = ColumnMeans(ComputeLogits(ood, head).values);
  LogitGap g;
  g.direct = Difference(in, out);
  g.transferred = TransferGap(head, SeparationGap(id, ood).per_channel);
  g.relative_error =
      RelativeError(g.direct, g.transferred, std::max(MaxAbs(in), MaxAbs(out)));
  return g;
}

GapReport ComputeGapReport(const ActivationBatch& id_acts, const ActivationBatch& ood_acts,
                           const ClassifierHead& head, double gamma) {
  RequireSameChannels(id_acts.channels(), ood_acts.channels());
  RequireSameChannels(id_acts.channels(), head.inputs());
  const ChannelStats in = ComputeChannelStats(id_acts);
  const ChannelStats out = ComputeChannelStats(ood_acts);
  const FeatureBatch in_ms = DavisMeanStd(in, gamma);
  const FeatureBatch out_ms = DavisMeanStd(out, gamma);

  GapReport r;
  r.gamma = gamma;
  r.delta_mu = SeparationGap(in.mean, out.mean);
  r.delta_m = SeparationGap(in.max, out.max);
  r.delta_sigma = SeparationGap(in.std, out.std);
  r.delta_mu_sigma = SeparationGap(in_ms, out_ms);

  const LogitGap base = ComputeLogitGap(in.mean, out.mean, head);
  const LogitGap max = ComputeLogitGap(in.max, out.max, head);
  const LogitGap ms = ComputeLogitGap(in_ms, out_ms, head);
  r.logit_gap_baseline = base.direct;
  r.logit_gap_max = max.direct;
  r.logit_gap_mu_sigma = ms.direct;
  r.linearity_error = std::max({base.relative_error, max.relative_error, ms.relative_error});

  r.score_gap_baseline = ScoreGap(in.mean, out.mean, head);
  r.score_gap_max = ScoreGap(in.max, out.max, head);
  r.score_gap_mu_sigma = ScoreGap(in_ms, out_ms, head);
  r.max_vs_mean_violation_rate =
      ViolationRate(r.delta_m.per_channel, r.delta_mu.per_channel);
  r.mu_sigma_vs_mean_violation_rate =
      ViolationRate(r.delta_mu_sigma.per_channel, r.delta_mu.per_channel);
  return r;
}

Lemma1Check CheckLemma1(const ChannelStats& id_stats, const ChannelStats& ood_stats,
                        double gamma) {
  const GapVector mu = SeparationGap(id_stats.mean, ood_stats.mean);
  const GapVector ms =
      SeparationGap(DavisMeanStd(id_stats, gamma), DavisMeanStd(ood_stats, gamma));
  const GapVector sigma = SeparationGap(id_stats.std, ood_stats.std);
  Lemma1Check r;
  r.gamma = gamma;
  r.lhs = ms.mean - mu.mean;
  r.rhs = gamma * sigma.mean;
  const double denom = std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-12});
  r.relative_error = (r.lhs == r.rhs) ? 0.0 : std::abs(r.lhs - r.rhs) / denom;
  r.sigma_gap = sigma.mean;
  r.holds = sigma.mean >= 0.0;
  std::size_t bad = 0;
  for (double d : sigma.per_channel) bad += d < 0.0 ? 1 : 0;
  r.channel_violation_rate =
      static_cast<double>(bad) / static_cast<double>(sigma.per_channel.size());
  return r;
}

Assumption1Result EnforceAssumption1(const ClassifierHead& head,
                                     const FeatureBatch* features) {
  const auto sums = head.ColumnSums();
  const double worst = *std::min_element(sums.begin(), sums.end());
  Assumption1Result r{head, 0.0, std::nullopt};
  if (worst < 0.0) {
    const double eps = 1e-6 * std::max(1.0, MaxAbs(head.weights().values()));
    r.alpha = -worst / static_cast<double>(head.inputs()) + eps;
    Matrix w = head.weights();
    for (double& v : w.values()) v += r.alpha;
    r.head = ClassifierHead(std::move(w),
                            std::vector<double>(head.bias().begin(), head.bias().end()));
  }
  if (features != nullptr) {
    const LogitBatch before = ComputeLogits(*features, head);
    const LogitBatch after = ComputeLogits(*features, r.head);
    bool same = true;
    for (std::size_t i = 0; i < before.samples() && same; ++i) {
      same = Argmax(before.values.row(i)) == Argmax(after.values.row(i));
    }
    r.argmax_preserved = same;
  }
  return r;
}

Theorem1Check CompareShapedGaps(const FeatureBatch& id_base, const FeatureBatch& ood_base,
                                const FeatureBatch& id_shaped,
                                const FeatureBatch& ood_shaped,
                                const ClassifierHead& head) {
  const auto sums = head.ColumnSums();
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (sums[c] < 0.0) {
      throw Error(ErrorCode::kAssumptionViolated,
                  "column " + std::to_string(c) + " of W sums to " +
                      std::to_string(sums[c]) + " < 0; enforce the weight shift first");
    }
  }
  const LogitBatch lb_in = ComputeLogits(id_base, head);
  const LogitBatch lb_out = ComputeLogits(ood_base, head);
  const LogitBatch ls_in = ComputeLogits(id_shaped, head);
  const LogitBatch ls_out = ComputeLogits(ood_shaped, head);

  Theorem1Check r;
  r.baseline_logit_gap = Difference(ColumnMeans(lb_in.values), ColumnMeans(lb_out.values));
  r.shaped_logit_gap = Difference(ColumnMeans(ls_in.values), ColumnMeans(ls_out.values));
  r.all_dominant = true;
  for (std::size_t c = 0; c < head.classes(); ++c) {
    r.dominance.push_back(r.shaped_logit_gap[c] >= r.baseline_logit_gap[c]);
    r.all_dominant = r.all_dominant && r.dominance.back();
  }
  const ScoreSet eb_in = EnergyScore(lb_in), eb_out = EnergyScore(lb_out);
  const ScoreSet es_in = EnergyScore(ls_in), es_out = EnergyScore(ls_out);
  r.baseline_score_gap = Average(eb_in.scores) - Average(eb_out.scores);
  r.shaped_score_gap = Average(es_in.scores) - Average(es_out.scores);
  r.baseline_auroc = Auroc(eb_in.scores, eb_out.scores);
  r.shaped_auroc = Auroc(es_in.scores, es_out.scores);
  r.baseline_fpr95 = FprAtTpr(eb_in.scores, eb_out.scores);
  r.shaped_fpr95 = FprAtTpr(es_in.scores, es_out.scores);
  return r;
}

Theorem1Check CheckTheorem1(const ActivationBatch& id_acts, const ActivationBatch& ood_acts,
                            const ClassifierHead& head, DavisVariant variant,
                            double gamma) {
  RequireSameChannels(id_acts.channels(), ood_acts.channels());
  const ChannelStats in = ComputeChannelStats(id_acts);
  const ChannelStats out = ComputeChannelStats(ood_acts);
  if (variant == DavisVariant::kMax) {
    return CompareShapedGaps(in.mean, out.mean, DavisMax(in), DavisMax(out), head);
  }
  return CompareShapedGaps(in.mean, out.mean, DavisMeanStd(in, gamma),
                           DavisMeanStd(out, gamma), head);
}

void SyntheticSpec::Validate() const {
  if (channels == 0 || edge == 0 || samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic dimensions must be >= 1");
  }
  if (classes < 2) throw Error(ErrorCode::kInvalidArgument, "synthetic classes must be >= 2");
  for (double s : {id_map_std, ood_map_std, sample_offset_std}) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "synthetic stds must be finite and >= 0");
    }
  }
  if (!std::isfinite(id_map_mean) || !std::isfinite(ood_map_mean)) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic means must be finite");
  }
}

std::string SyntheticSpecToJson(const SyntheticSpec& s) {
  ojson doc = {{"channels", s.channels},
               {"edge", s.edge},
               {"samples", s.samples},
               {"classes", s.classes},
               {"id_map_mean", s.id_map_mean},
               {"ood_map_mean", s.ood_map_mean},
               {"id_map_std", s.id_map_std},
               {"ood_map_std", s.ood_map_std},
               {"sample_offset_std", s.sample_offset_std},
               {"post_nonlinearity", s.nonlinearity == Nonlinearity::kRelu ? "relu" : "none"},
               {"seed", s.seed}};
  return doc.dump(2) + "\n";
}

SyntheticSpec SyntheticSpecFromJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("synthetic spec: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "synthetic spec must be a JSON object");
  }
  SyntheticSpec s;
  try {
    s.channels = doc.value("channels", s.channels);
    s.edge = doc.value("edge", s.edge);
    s.samples = doc.value("samples", s.samples);
    s.classes = doc.value("classes", s.classes);
    s.id_map_mean = doc.value("id_map_mean", s.id_map_mean);
    s.ood_map_mean = doc.value("ood_map_mean", s.ood_map_mean);
    s.id_map_std = doc.value("id_map_std", s.id_map_std);
    s.ood_map_std = doc.value("ood_map_std", s.ood_map_std);
    s.sample_offset_std = doc.value("sample_offset_std", s.sample_offset_std);
    s.seed = doc.value("seed", s.seed);
    const std::string act = doc.value("post_nonlinearity", std::string("relu"));
    if (act == "relu") {
      s.nonlinearity = Nonlinearity::kRelu;
    } else if (act == "none") {
      s.nonlinearity = Nonlinearity::kNone;
    } else {
      throw Error(ErrorCode::kSchemaViolation,
                  "synthetic spec: post_nonlinearity must be relu or none");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("synthetic spec: ") + e.what());
  }
  s.Validate();
  return s;
}

ActivationBatch GenerateActivations(const SyntheticSpec& spec, SyntheticStream stream,
                                    double map_mean, double map_std) {
  spec.Validate();
  const auto tag = static_cast<std::uint64_t>(stream);
  const CounterStream pixels(spec.seed, tag);
  const CounterStream offsets(spec.seed, tag, 1);
  const std::size_t per_sample = spec.channels * spec.edge * spec.edge;
  std::vector<float> values(spec.samples * per_sample);
  ParallelFor(spec.samples, [&](std::size_t begin, std::size_t end) {
    std::vector<double> z(per_sample);
    for (std::size_t i = begin; i < end; ++i) {
      const double offset = spec.sample_offset_std * offsets.Normal(i);
      pixels.FillNormal(i * per_sample, z);
      float* dst = values.data() + i * per_sample;
      for (std::size_t p = 0; p < per_sample; ++p) {
        double v = map_mean + offset + map_std * z[p];
        if (spec.nonlinearity == Nonlinearity::kRelu) v = std::max(v, 0.0);
        dst[p] = static_cast<float>(v);
      }
    }
  });
  return ActivationBatch(spec.samples, spec.channels, spec.edge, std::move(values));
}

ClassifierHead GenerateHead(const SyntheticSpec& spec) {
  spec.Validate();
  const std::size_t n = spec.channels;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix w(n, spec.classes);
  std::vector<double> column(n);
  for (std::size_t c = 0; c < spec.classes; ++c) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      CounterStream(spec.seed, static_cast<std::uint64_t>(SyntheticStream::kHead), c,
                    attempt)
          .FillNormal(0, column);
      double sum = 0.0;
      // float32-representable so a written suite reloads bit-identically.
      for (double& v : column) {
        v = static_cast<float>(v * scale);
        sum += v;
      }
      if (sum >= 0.0) break;
    }
    for (std::size_t j = 0; j < n; ++j) w(j, c) = column[j];
  }
  std::vector<double> bias(spec.classes);
  const CounterStream bias_stream(spec.seed, static_cast<std::uint64_t>(SyntheticStream::kBias));
  for (std::size_t c = 0; c < spec.classes; ++c) bias[c] = static_cast<float>(0.1 * bias_stream.Normal(c));
  return ClassifierHead(std::move(w), std::move(bias));
}

SyntheticData GenerateSynthetic(const SyntheticSpec& spec) {
  SyntheticData d{
      GenerateActivations(spec, SyntheticStream::kIdTest, spec.id_map_mean, spec.id_map_std),
      GenerateActivations(spec, SyntheticStream::kOod, spec.ood_map_mean, spec.ood_map_std),
      GenerateHead(spec),
      {}};
  const LogitBatch logits = ComputeLogits(ChannelMean(d.id), d.head);
  d.labels.resize(logits.samples());
  for (std::size_t i = 0; i < logits.samples(); ++i) {
    d.labels[i] = static_cast<std::int64_t>(Argmax(logits.values.row(i)));
  }
  return d;
}

std::vector<std::uint64_t> TheorySeeds(std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = 1000 + 7919 * i;
  return seeds;
}

TheorySuiteReport RunTheorySuite(const SyntheticSpec& base_spec,
                                 std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "no seeds");
  TheorySuiteReport report;

  // Exact identities on the first seed.
  SyntheticSpec spec = base_spec;
  spec.seed = seeds[0];
  const SyntheticData first = GenerateSynthetic(spec);
  const ChannelStats in = ComputeChannelStats(first.id);
  const ChannelStats out = ComputeChannelStats(first.ood);
  bool ok = true;
  for (double gamma : {0.0, 0.5, 1.0, 3.0}) {
    report.lemma1.push_back(CheckLemma1(in, out, gamma));
    ok = ok && report.lemma1.back().relative_error <= kLemma1Tolerance;
  }
  report.linearity_error = ComputeGapReport(first.id, first.ood, first.head, 3.0).linearity_error;
  ok = ok && report.linearity_error <= kLinearityTolerance;

  // Weight shift on a head pushed below zero column sums.
  Matrix shifted = first.head.weights();
  for (double& v : shifted.values()) v -= 0.05;
  const ClassifierHead negative(shifted, std::vector<double>(first.head.bias().begin(),
                                                             first.head.bias().end()));
  const Assumption1Result a1 = EnforceAssumption1(negative, &in.mean);
  report.assumption1_argmax_preserved = a1.argmax_preserved.value_or(false);
  const auto e_before = EnergyScore(ComputeLogits(in.mean, negative)).scores;
  const auto e_after = EnergyScore(ComputeLogits(in.mean, a1.head)).scores;
  for (std::size_t i = 0; i < e_before.size(); ++i) {
    double mass = 0.0;
    for (double h : in.mean.values.row(i)) mass += h;
    const double expect = a1.alpha * mass;
    const double err = std::abs((e_after[i] - e_before[i]) - expect) /
                       std::max(std::abs(expect), 1e-12);
    report.assumption1_energy_error = std::max(report.assumption1_energy_error, err);
  }
  ok = ok && report.assumption1_argmax_preserved &&
       report.assumption1_energy_error <= kEnergyShiftTolerance;

  // Uniform delta: shaped ID features = baseline + delta, OOD unchanged.
  const double delta = 0.25;
  FeatureBatch id_shifted = in.mean;
  for (double& v : id_shifted.values.values()) v += delta;
  const Theorem1Check uniform =
      CompareShapedGaps(in.mean, out.mean, id_shifted, out.mean, first.head);
  const auto sums = first.head.ColumnSums();
  std::vector<double> increase(sums.size()), expected(sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) {
    increase[c] = uniform.shaped_logit_gap[c] - uniform.baseline_logit_gap[c];
    expected[c] = delta * sums[c];
  }
  report.uniform_delta_error = RelativeError(increase, expected, 1.0);
  ok = ok && report.uniform_delta_error <= kUniformDeltaTolerance;
  report.identities_pass = ok;

  // Monte-Carlo over seeds, merged in seed order.
  report.trials.resize(seeds.size());
  ParallelFor(seeds.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      SyntheticSpec s = base_spec;
      s.seed = seeds[t];
      const SyntheticData data = GenerateSynthetic(s);
      const Theorem1Check check =
          CheckTheorem1(data.id, data.ood, data.head, DavisVariant::kMax);
      report.trials[t] = {seeds[t],           check.baseline_auroc, check.shaped_auroc,
                          check.baseline_fpr95, check.shaped_fpr95, check.all_dominant};
    }
  });
  double improvement = 0.0;
  for (const auto& t : report.trials) {
    report.auroc_wins += t.shaped_auroc >= t.baseline_auroc ? 1 : 0;
    improvement += t.baseline_fpr95 - t.shaped_fpr95;
  }
  report.mean_fpr95_improvement = improvement / static_cast<double>(seeds.size());
  report.statistical_pass =
      static_cast<double>(report.auroc_wins) >=
          kRequiredWinFraction * static_cast<double>(seeds.size()) - 1e-9 &&
      report.mean_fpr95_improvement > 0.0;
  return report;
}

std::string TheorySuiteReportToJson(const TheorySuiteReport& r) {
  ojson doc;
  doc["identities_pass"] = r.identities_pass;
  doc["statistical_pass"] = r.statistical_pass;
  ojson lemma = ojson::array();
  for (const auto& l : r.lemma1) {
    lemma.push_back({{"gamma", l.gamma},
                     {"lhs", l.lhs},
                     {"rhs", l.rhs},
                     {"relative_error", l.relative_error},
                     {"sigma_gap", l.sigma_gap},
                     {"holds", l.holds},
                     {"channel_violation_rate", l.channel_violation_rate}});
  }
  doc["lemma1"] = lemma;
  doc["linearity_error"] = r.linearity_error;
  doc["assumption1_argmax_preserved"] = r.assumption1_argmax_preserved;
  doc["assumption1_energy_error"] = r.assumption1_energy_error;
  doc["uniform_delta_error"] = r.uniform_delta_error;
  doc["auroc_wins"] = r.auroc_wins;
  doc["trial_count"] = r.trials.size();
  doc["mean_fpr95_improvement"] = r.mean_fpr95_improvement;
  ojson trials = ojson::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"seed", t.seed},
                      {"baseline_auroc", t.baseline_auroc},
                      {"shaped_auroc", t.shaped_auroc},
                      {"baseline_fpr95", t.baseline_fpr95},
                      {"shaped_fpr95", t.shaped_fpr95},
                      {"logit_gaps_dominant", t.logit_gaps_dominant}});
  }
  doc["trials"] = trials;
  return doc.dump(2) + "\n";
}

std::string GapReportToJson(const GapReport& r) {
  ojson doc;
  doc["gamma"] = r.gamma;
  doc["delta_mu"] = GapJson(r.delta_mu);
  doc["delta_m"] = GapJson(r.delta_m);
  doc["delta_sigma"] = GapJson(r.delta_sigma);
  doc["delta_mu_sigma"] = GapJson(r.delta_mu_sigma);
  doc["logit_gap_baseline"] = r.logit_gap_baseline;
  doc["logit_gap_max"] = r.logit_gap_max;
  doc["logit_gap_mu_sigma"] = r.logit_gap_mu_sigma;
  doc["score_gap_baseline"] = r.score_gap_baseline;
  doc["score_gap_max"] = r.score_gap_max;
  doc["score_gap_mu_sigma"] = r.score_gap_mu_sigma;
  doc["linearity_error"] = r.linearity_error;
  doc["max_vs_mean_violation_rate"] = r.max_vs_mean_violation_rate;
  doc["mu_sigma_vs_mean_violation_rate"] = r.mu_sigma_vs_mean_violation_rate;
  return doc.dump(2) + "\n";
}

}  // namespace oodkit
