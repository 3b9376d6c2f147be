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

#include "oodkit/manifest.h"

#include <gtest/gtest.h>

#include <fstream>

#include "oodkit/tensorio.h"
#include "test_util.h"

namespace oodkit {
namespace {

using testing::TempDir;

void Put(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

void Zeros(const std::filesystem::path& p, std::vector<std::size_t> shape) {
  std::size_t count = 1;
  for (auto d : shape) count *= d;
  WriteTensor({shape, std::vector<float>(count, 0.5f)}, p);
}

class ManifestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Zeros(dir_ / "f.npy", {5, 8});
    Zeros(dir_ / "w.npy", {8, 3});
    Zeros(dir_ / "w7.npy", {7, 3});
    Zeros(dir_ / "b.npy", {3});
    Zeros(dir_ / "a.npy", {5, 8, 2, 2});
    WriteLabels(std::vector<std::int64_t>{0, 1, 2, 0, 1}, dir_ / "l.npy");
    WriteLabels(std::vector<std::int64_t>{0, 1}, dir_ / "l2.npy");
  }

  DatasetManifest Parse(const std::string& text) { return ParseManifest(text, dir_.path()); }

  TempDir dir_;
};

TEST_F(ManifestTest, ValidFeaturesManifest) {
  const auto m = Parse(R"({"split_name": "id_test", "features": "f.npy",
      "head_weights": "w.npy", "head_bias": "b.npy", "metadata": {"model": "r18", "noise_std": 0.2}})");
  EXPECT_EQ(m.split_name, "id_test");
  EXPECT_EQ(*m.features, dir_ / "f.npy");
  EXPECT_EQ(m.metadata.at("model"), "r18");
  EXPECT_EQ(m.metadata.at("noise_std"), "0.2");
  EXPECT_NO_THROW(ValidateManifest(m));
  const SplitData split = LoadSplit(m);
  EXPECT_EQ(split.samples(), 5u);
  EXPECT_EQ(split.channels(), 8u);
  EXPECT_EQ(LoadHead(m).classes(), 3u);
}

TEST_F(ManifestTest, HeadWidthMismatchNamesPair) {
  const auto m = Parse(R"({"split_name": "s", "features": "f.npy",
      "head_weights": "w7.npy", "head_bias": "b.npy"})");
  try {
    ValidateManifest(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
    const std::string what = e.what();
    EXPECT_NE(what.find("features (5, 8)"), std::string::npos) << what;
    EXPECT_NE(what.find("head_weights (7, 3)"), std::string::npos) << what;
  }
}

TEST_F(ManifestTest, SchemaViolations) {
  EXPECT_OODKIT_ERROR(Parse(R"({"split_name": "s", "head_weights": "w.npy", "head_bias": "b.npy"})"),
                      ErrorCode::kSchemaViolation);
  EXPECT_OODKIT_ERROR(Parse(R"({"split_name": "s", "features": "f.npy", "head_weights": "w.npy",
      "head_bias": "b.npy", "extra": 1})"),
                      ErrorCode::kSchemaViolation);
  EXPECT_OODKIT_ERROR(Parse(R"({"features": "f.npy", "head_weights": "w.npy", "head_bias": "b.npy"})"),
                      ErrorCode::kSchemaViolation);
  EXPECT_OODKIT_ERROR(Parse("[1, 2]"), ErrorCode::kSchemaViolation);
  EXPECT_OODKIT_ERROR(Parse("{not json"), ErrorCode::kSchemaViolation);
  const auto missing = Parse(R"({"split_name": "s", "features": "nope.npy",
      "head_weights": "w.npy", "head_bias": "b.npy"})");
  EXPECT_OODKIT_ERROR(ValidateManifest(missing), ErrorCode::kSchemaViolation);
}

TEST_F(ManifestTest, CrossShapeChecks) {
  EXPECT_NO_THROW(ValidateManifest(Parse(R"({"split_name": "s", "activations": "a.npy",
      "features": "f.npy", "labels": "l.npy", "head_weights": "w.npy", "head_bias": "b.npy"})")));
  EXPECT_OODKIT_ERROR(ValidateManifest(Parse(R"({"split_name": "s", "features": "f.npy",
      "labels": "l2.npy", "head_weights": "w.npy", "head_bias": "b.npy"})")),
                      ErrorCode::kShapeMismatch);
  EXPECT_OODKIT_ERROR(ValidateManifest(Parse(R"({"split_name": "s", "features": "f.npy",
      "head_weights": "w.npy", "head_bias": "f.npy"})")),
                      ErrorCode::kShapeMismatch);
  EXPECT_OODKIT_ERROR(ValidateManifest(Parse(R"({"split_name": "s", "features": "f.npy",
      "head_weights": "b.npy", "head_bias": "b.npy"})")),
                      ErrorCode::kShapeMismatch);
}

TEST_F(ManifestTest, JsonRoundTrip) {
  DatasetManifest m;
  m.split_name = "ood:texture";
  m.activations = dir_ / "a.npy";
  m.labels = dir_ / "l.npy";
  m.head_weights = dir_ / "w.npy";
  m.head_bias = dir_ / "b.npy";
  m.metadata["layer"] = "layer4";
  Put(dir_ / "m.json", ManifestToJson(m, dir_.path()));
  const DatasetManifest back = LoadManifest(dir_ / "m.json");
  EXPECT_EQ(back.split_name, m.split_name);
  EXPECT_EQ(back.activations, m.activations);
  EXPECT_EQ(back.labels, m.labels);
  EXPECT_FALSE(back.features.has_value());
  EXPECT_EQ(back.metadata, m.metadata);
}

TEST_F(ManifestTest, SuiteManifest) {
  const SuiteManifest s = ParseSuiteManifest(
      R"({"name": "cifar10", "id": "id.json", "proxy_val": "p.json", "ood": ["a.json", "b.json"]})",
      dir_.path());
  EXPECT_EQ(s.name, "cifar10");
  EXPECT_EQ(s.id, dir_ / "id.json");
  EXPECT_FALSE(s.id_train.has_value());
  ASSERT_EQ(s.ood.size(), 2u);
  EXPECT_OODKIT_ERROR(ParseSuiteManifest(R"({"id": "id.json", "ood": []})", dir_.path()),
                      ErrorCode::kSchemaViolation);
}

TEST_F(ManifestTest, DigestIsStableAndContentSensitive) {
  const std::string d1 = FileDigest(dir_ / "f.npy");
  EXPECT_EQ(d1.size(), 16u);
  EXPECT_EQ(d1, FileDigest(dir_ / "f.npy"));
  EXPECT_NE(d1, FileDigest(dir_ / "a.npy"));
  Put(dir_ / "empty", "");
  EXPECT_EQ(FileDigest(dir_ / "empty"), "cbf29ce484222325");  // FNV-1a offset basis
}

}  // namespace
}  // namespace oodkit
