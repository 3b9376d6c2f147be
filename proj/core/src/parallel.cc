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

#include "oodkit/parallel.h"

#include <atomic>

namespace oodkit {
namespace {

std::atomic<int> g_max_threads{0};
thread_local bool t_in_region = false;

}  // namespace

void SetMaxThreads(int threads) { g_max_threads = std::max(0, threads); }

int MaxThreads() {
  const int configured = g_max_threads.load();
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool InParallelRegion() { return t_in_region; }

ParallelRegionGuard::ParallelRegionGuard() : previous_(t_in_region) {
  t_in_region = true;
}

ParallelRegionGuard::~ParallelRegionGuard() { t_in_region = previous_; }

}  // namespace oodkit
