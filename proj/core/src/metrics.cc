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

#include "oodkit/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "nlohmann/json.hpp"
#include "oodkit/error.h"

namespace oodkit {
namespace {

void RequireNonEmpty(std::span<const double> s, const char* what) {
  if (s.empty()) {
    throw Error(ErrorCode::kEmptySet, std::string(what) + " scores are empty");
  }
  for (double v : s) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, std::string(what) + " scores contain " +
                                             std::to_string(v));
    }
  }
}

void RequireTpr(double tpr) {
  if (!(tpr > 0.0 && tpr <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "tpr target must be in (0, 1], got " + std::to_string(tpr));
  }
}

// Shortest text that parses back to the same double.
std::string Shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

double CalibrateLambda(std::span<const double> id_scores, double tpr_target) {
  RequireNonEmpty(id_scores, "ID");
  RequireTpr(tpr_target);
  std::vector<double> sorted(id_scores.begin(), id_scores.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  // Slack absorbs representation error in tpr * n (0.95 * 100 etc.).
  const double needed = std::ceil(tpr_target * static_cast<double>(n) - 1e-9);
  const auto r = std::clamp<std::size_t>(static_cast<std::size_t>(needed), 1, n);
  return sorted[n - r];
}

double TruePositiveRate(std::span<const double> id_scores, double lambda) {
  RequireNonEmpty(id_scores, "ID");
  const auto pass = std::count_if(id_scores.begin(), id_scores.end(),
                                  [&](double s) { return s >= lambda; });
  return static_cast<double>(pass) / static_cast<double>(id_scores.size());
}

double FprAtTpr(std::span<const double> id_scores, std::span<const double> ood_scores,
                double tpr_target) {
  RequireNonEmpty(ood_scores, "OOD");
  const double lambda = CalibrateLambda(id_scores, tpr_target);
  const auto fp = std::count_if(ood_scores.begin(), ood_scores.end(),
                                [&](double s) { return s >= lambda; });
  return static_cast<double>(fp) / static_cast<double>(ood_scores.size());
}

double Auroc(std::span<const double> id_scores, std::span<const double> ood_scores) {
  RequireNonEmpty(id_scores, "ID");
  RequireNonEmpty(ood_scores, "OOD");
  std::vector<double> id(id_scores.begin(), id_scores.end());
  std::vector<double> ood(ood_scores.begin(), ood_scores.end());
  std::sort(id.begin(), id.end());
  std::sort(ood.begin(), ood.end());
  // Twice the Mann-Whitney U, kept integral so ties are exact.
  std::uint64_t twice_u = 0;
  std::size_t below = 0;  // OOD scores strictly below the current ID value
  std::size_t i = 0;
  while (i < id.size()) {
    const double v = id[i];
    std::size_t id_eq = 0;
    while (i < id.size() && id[i] == v) {
      ++id_eq;
      ++i;
    }
    while (below < ood.size() && ood[below] < v) ++below;
    std::size_t equal = 0;
    while (below + equal < ood.size() && ood[below + equal] == v) ++equal;
    twice_u += static_cast<std::uint64_t>(id_eq) * (2 * below + equal);
  }
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(id.size()) * static_cast<double>(ood.size()));
}

EvalResult Evaluate(const ScoreSet& id, const ScoreSet& ood, double tpr_target) {
  EvalResult r;
  r.ood_set = ood.split_name;
  r.lambda = CalibrateLambda(id.scores, tpr_target);
  r.fpr95 = FprAtTpr(id.scores, ood.scores, tpr_target);
  r.auroc = Auroc(id.scores, ood.scores);
  r.id_count = id.scores.size();
  r.ood_count = ood.scores.size();
  return r;
}

SuiteEvaluation EvaluateSuite(const ScoreSet& id, std::span<const ScoreSet> ood_sets,
                              double tpr_target) {
  if (ood_sets.empty()) throw Error(ErrorCode::kEmptySet, "no OOD score sets");
  SuiteEvaluation out;
  for (const auto& ood : ood_sets) {
    out.per_set.push_back(Evaluate(id, ood, tpr_target));
    out.mean_fpr95 += out.per_set.back().fpr95;
    out.mean_auroc += out.per_set.back().auroc;
  }
  out.mean_fpr95 /= static_cast<double>(ood_sets.size());
  out.mean_auroc /= static_cast<double>(ood_sets.size());
  return out;
}

std::string EvaluationCsv(const SuiteEvaluation& evaluation) {
  std::ostringstream os;
  os << "ood_set,fpr95,auroc,lambda,id_count,ood_count\n";
  for (const auto& r : evaluation.per_set) {
    os << r.ood_set << ',' << Shortest(r.fpr95) << ',' << Shortest(r.auroc) << ','
       << Shortest(r.lambda) << ',' << r.id_count << ',' << r.ood_count << '\n';
  }
  os << "average," << Shortest(evaluation.mean_fpr95) << ','
     << Shortest(evaluation.mean_auroc) << ",,,\n";
  return os.str();
}

std::string EvaluationJson(const SuiteEvaluation& evaluation, double tpr_target) {
  nlohmann::ordered_json doc;
  doc["tpr_target"] = tpr_target;
  doc["results"] = nlohmann::ordered_json::array();
  for (const auto& r : evaluation.per_set) {
    doc["results"].push_back({{"ood_set", r.ood_set},
                              {"fpr95", r.fpr95},
                              {"auroc", r.auroc},
                              {"lambda", r.lambda},
                              {"id_count", r.id_count},
                              {"ood_count", r.ood_count}});
  }
  doc["average"] = {{"fpr95", evaluation.mean_fpr95},
                    {"auroc", evaluation.mean_auroc}};
  return doc.dump(2) + "\n";
}

}  // namespace oodkit
