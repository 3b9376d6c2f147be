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


#include <benchmark/benchmark.h>

#include <random>

#include "oodkit/analysis.h"
#include "oodkit/metrics.h"
#include "oodkit/parallel.h"
#include "oodkit/scoring.h"
#include "oodkit/shaping.h"
#include "oodkit/stats.h"

namespace {

using namespace oodkit;

ActivationBatch Batch(std::size_t samples, std::size_t channels, std::size_t edge) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<float> dist(0.0f, 2.0f);
  std::vector<float> v(samples * channels * edge * edge);
  for (float& x : v) x = dist(rng);
  return ActivationBatch(samples, channels, edge, std::move(v));
}

FeatureBatch Features(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  Matrix m(rows, cols);
  for (double& x : m.values()) x = dist(rng);
  return {std::move(m), StatKind::kRawGap};
}

ClassifierHead Head(std::size_t n, std::size_t c) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist(0.0, 0.1);
  Matrix w(n, c);
  for (double& x : w.values()) x = dist(rng);
  return ClassifierHead(std::move(w), std::vector<double>(c, 0.0));
}

std::vector<double> Scores(std::size_t n, double shift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(shift, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// ResNet-50-like penultimate block: n = 2048, k = 7.
void BM_ChannelStats(benchmark::State& state) {
  SetMaxThreads(1);
  const ActivationBatch b = Batch(static_cast<std::size_t>(state.range(0)), 2048, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeChannelStats(b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChannelStats)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ChannelMedian(benchmark::State& state) {
  SetMaxThreads(1);
  const ActivationBatch b = Batch(16, 2048, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ChannelMedian(b));
}
BENCHMARK(BM_ChannelMedian)->Unit(benchmark::kMillisecond);

void BM_LogitsEnergy(benchmark::State& state) {
  SetMaxThreads(1);
  const FeatureBatch f = Features(static_cast<std::size_t>(state.range(0)), 512);
  const ClassifierHead head = Head(512, 100);
  for (auto _ : state) benchmark::DoNotOptimize(EnergyScore(ComputeLogits(f, head)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogitsEnergy)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DiceFit(benchmark::State& state) {
  SetMaxThreads(1);
  const FeatureBatch f = Features(1024, 512);
  const ClassifierHead head = Head(512, 100);
  for (auto _ : state) benchmark::DoNotOptimize(FitDiceMask(f, head, 70.0));
}
BENCHMARK(BM_DiceFit)->Unit(benchmark::kMillisecond);

void BM_AshS(benchmark::State& state) {
  SetMaxThreads(1);
  const FeatureBatch f = Features(256, 2048);
  for (auto _ : state) benchmark::DoNotOptimize(AshS(f, 90.0));
}
BENCHMARK(BM_AshS)->Unit(benchmark::kMillisecond);

void BM_Auroc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto id = Scores(n, 1.0, 4);
  const auto ood = Scores(n, 0.0, 5);
  for (auto _ : state) benchmark::DoNotOptimize(Auroc(id, ood));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_Auroc)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_FprAtTpr(benchmark::State& state) {
  const auto id = Scores(10000, 1.0, 6);
  const auto ood = Scores(10000, 0.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(FprAtTpr(id, ood, 0.95));
}
BENCHMARK(BM_FprAtTpr);

void BM_GenerateSynthetic(benchmark::State& state) {
  SetMaxThreads(1);
  SyntheticSpec spec;
  spec.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(GenerateSynthetic(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_GenerateSynthetic)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
