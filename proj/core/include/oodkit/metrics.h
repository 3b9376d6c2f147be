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

#ifndef OODKIT_METRICS_H_
#define OODKIT_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "oodkit/types.h"

namespace oodkit {

struct EvalResult {
  std::string ood_set;
  double fpr95 = 0.0;
  double auroc = 0.0;
  double lambda = 0.0;
  std::size_t id_count = 0;
  std::size_t ood_count = 0;
};

struct SuiteEvaluation {
  std::vector<EvalResult> per_set;
  double mean_fpr95 = 0.0;  // unweighted over OOD sets
  double mean_auroc = 0.0;
};

// Largest threshold lambda with |{s in id : s >= lambda}| >= tpr * N.
// With r = ceil(tpr * N) this is the r-th largest ID score.
double CalibrateLambda(std::span<const double> id_scores, double tpr_target = 0.95);

// Fraction of ID scores >= lambda.
double TruePositiveRate(std::span<const double> id_scores, double lambda);

// Fraction of OOD scores >= CalibrateLambda(id_scores, tpr_target). No ROC
// interpolation.
double FprAtTpr(std::span<const double> id_scores, std::span<const double> ood_scores,
                double tpr_target = 0.95);

// P(id > ood) + 0.5 P(id == ood), computed from one sort of each set.
double Auroc(std::span<const double> id_scores, std::span<const double> ood_scores);

EvalResult Evaluate(const ScoreSet& id, const ScoreSet& ood, double tpr_target = 0.95);
SuiteEvaluation EvaluateSuite(const ScoreSet& id, std::span<const ScoreSet> ood_sets,
                              double tpr_target = 0.95);

// Columns ood_set,fpr95,auroc,lambda,id_count,ood_count; last row "average".
std::string EvaluationCsv(const SuiteEvaluation& evaluation);
std::string EvaluationJson(const SuiteEvaluation& evaluation, double tpr_target);

}  // namespace oodkit

#endif  // OODKIT_METRICS_H_
