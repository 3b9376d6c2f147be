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

#include "cli_io.h"

#include <fstream>
#include <iterator>

#include "oodkit/error.h"
#include "oodkit/tensorio.h"

namespace oodkit::cli {

bool HasExtension(const std::filesystem::path& path, const char* ext) {
  return path.extension() == ext;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIoFailure, "short write to " + path.string());
}

SplitData LoadAnySplit(const std::filesystem::path& path) {
  if (HasExtension(path, ".json")) return LoadSplit(LoadManifest(path));
  SplitData split;
  split.name = path.stem().string();
  const TensorFile t = ReadTensor(path);
  if (t.rank() == 4) {
    split.activations = ToActivationBatch(t);
  } else if (t.rank() == 2) {
    split.features = ToFeatureBatch(t);
  } else {
    throw Error(ErrorCode::kInvalidShape,
                path.string() + ": expected (N, n, k, k) activations or (N, n) features");
  }
  return split;
}

ActivationBatch LoadActivations(const std::filesystem::path& path) {
  SplitData split = LoadAnySplit(path);
  if (!split.activations) {
    throw Error(ErrorCode::kInvalidShape,
                path.string() + ": activation maps (N, n, k, k) are required");
  }
  return std::move(*split.activations);
}

ClassifierHead LoadHeadFrom(const std::filesystem::path& path) {
  if (HasExtension(path, ".json")) return LoadHead(LoadManifest(path));
  std::filesystem::path bias = path.parent_path() / (path.stem().string() + "_bias.npy");
  if (!std::filesystem::exists(bias)) bias = path.parent_path() / "head_bias.npy";
  return ToClassifierHead(ReadTensor(path), ReadTensor(bias));
}

}  // namespace oodkit::cli
