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

#ifndef OODKIT_TESTS_TEST_UTIL_H_
#define OODKIT_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "oodkit/error.h"
#include "oodkit/types.h"

namespace oodkit::testing {

// Runs `stmt` and checks it throws oodkit::Error with the given code.
#define EXPECT_OODKIT_ERROR(stmt, expected_code)                              \
  do {                                                                        \
    try {                                                                     \
      stmt;                                                                   \
      ADD_FAILURE() << "expected " << ::oodkit::ErrorCodeName(expected_code); \
    } catch (const ::oodkit::Error& e) {                                      \
      EXPECT_EQ(e.code(), expected_code) << e.what();                         \
    }                                                                         \
  } while (0)

inline ActivationBatch RandomBatch(std::mt19937_64& rng, std::size_t n_samples,
                                   std::size_t channels, std::size_t edge,
                                   double lo = -1.0, double hi = 3.0) {
  std::uniform_real_distribution<float> dist(static_cast<float>(lo), static_cast<float>(hi));
  std::vector<float> v(n_samples * channels * edge * edge);
  for (float& x : v) x = dist(rng);
  return ActivationBatch(n_samples, channels, edge, std::move(v));
}

inline Matrix RandomMatrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                           double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (double& x : m.values()) x = dist(rng);
  return m;
}

inline FeatureBatch RandomFeatures(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   double lo = 0.0, double hi = 2.0) {
  return {RandomMatrix(rng, rows, cols, lo, hi), StatKind::kRawGap};
}

inline ClassifierHead RandomHead(std::mt19937_64& rng, std::size_t inputs,
                                 std::size_t classes) {
  Matrix w = RandomMatrix(rng, inputs, classes);
  std::vector<double> b(classes);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  for (double& x : b) x = dist(rng);
  return ClassifierHead(std::move(w), std::move(b));
}

inline double RelativeError(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("oodkit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace oodkit::testing

#endif  // OODKIT_TESTS_TEST_UTIL_H_
