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

#ifndef OODKIT_PARALLEL_H_
#define OODKIT_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace oodkit {

// Upper bound on worker threads used by the library. 0 restores the default
// (hardware concurrency).
void SetMaxThreads(int threads);
int MaxThreads();

// True on threads spawned by ParallelFor. Nested loops run inline there.
bool InParallelRegion();

class ParallelRegionGuard {
 public:
  ParallelRegionGuard();
  ~ParallelRegionGuard();
  ParallelRegionGuard(const ParallelRegionGuard&) = delete;
  ParallelRegionGuard& operator=(const ParallelRegionGuard&) = delete;

 private:
  bool previous_;
};

// Splits [0, count) into contiguous chunks and runs body(begin, end) on each.
// Callers write results to disjoint, index-addressed slots only, so output
// never depends on the thread count.
template <typename Body>
void ParallelFor(std::size_t count, Body&& body, std::size_t min_chunk = 1) {
  if (count == 0) return;
  const std::size_t max_workers =
      std::max<std::size_t>(1, static_cast<std::size_t>(MaxThreads()));
  const std::size_t workers = std::min(
      max_workers, (count + min_chunk - 1) / std::max<std::size_t>(1, min_chunk));
  if (workers <= 1 || InParallelRegion()) {
    body(std::size_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back([&, begin, end] {
        try {
          ParallelRegionGuard guard;
          body(begin, end);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace oodkit

#endif  // OODKIT_PARALLEL_H_
