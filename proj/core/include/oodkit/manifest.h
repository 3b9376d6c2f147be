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

#ifndef OODKIT_MANIFEST_H_
#define OODKIT_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oodkit/types.h"

namespace oodkit {

// One JSON file per split. Relative paths resolve against the manifest's
// directory.
//
//   {"split_name": "ood:texture", "activations": "acts.npy",
//    "features": "feats.npy", "labels": "labels.npy",
//    "head_weights": "W.npy", "head_bias": "b.npy",
//    "metadata": {"model": "resnet50"}}
struct DatasetManifest {
  std::string split_name;
  std::optional<std::filesystem::path> activations;
  std::optional<std::filesystem::path> features;
  std::optional<std::filesystem::path> labels;
  std::filesystem::path head_weights;
  std::filesystem::path head_bias;
  std::map<std::string, std::string> metadata;
};

DatasetManifest ParseManifest(std::string_view json,
                              const std::filesystem::path& base_dir);
DatasetManifest LoadManifest(const std::filesystem::path& path);
std::string ManifestToJson(const DatasetManifest& manifest,
                           const std::filesystem::path& base_dir);

// Checks that referenced files exist and that the cross-file shapes agree.
// Reads NPY headers only.
void ValidateManifest(const DatasetManifest& manifest);

// Top-level suite: the evaluated ID split, optional fit and proxy splits,
// and named OOD splits.
//
//   {"name": "cifar10", "id": "id_test.json", "id_train": "id_train.json",
//    "proxy_val": "proxy.json", "ood": ["ood_texture.json", ...]}
struct SuiteManifest {
  std::string name;
  std::filesystem::path id;
  std::optional<std::filesystem::path> id_train;
  std::optional<std::filesystem::path> proxy_val;
  std::vector<std::filesystem::path> ood;
};

SuiteManifest ParseSuiteManifest(std::string_view json,
                                 const std::filesystem::path& base_dir);
SuiteManifest LoadSuiteManifest(const std::filesystem::path& path);

// A split loaded into memory.
struct SplitData {
  std::string name;
  std::optional<ActivationBatch> activations;
  std::optional<FeatureBatch> features;  // raw GAP features when supplied
  std::optional<std::vector<std::int64_t>> labels;

  std::size_t samples() const;
  std::size_t channels() const;
};

SplitData LoadSplit(const DatasetManifest& manifest);
ClassifierHead LoadHead(const DatasetManifest& manifest);

// 64-bit FNV-1a of a file's bytes, hex encoded. Used for report provenance.
std::string FileDigest(const std::filesystem::path& path);

}  // namespace oodkit

#endif  // OODKIT_MANIFEST_H_
