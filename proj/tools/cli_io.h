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

#ifndef OODKIT_TOOLS_CLI_IO_H_
#define OODKIT_TOOLS_CLI_IO_H_

#include <filesystem>
#include <string>

#include "oodkit/manifest.h"
#include "oodkit/shaping.h"
#include "oodkit/types.h"

namespace oodkit::cli {

// A split read from a tensor file (.npy) or a dataset manifest (.json).
SplitData LoadAnySplit(const std::filesystem::path& path);

ActivationBatch LoadActivations(const std::filesystem::path& path);

// Head named by a manifest, or by a weights .npy with a sibling bias file
// ("<stem>_bias.npy" or "head_bias.npy").
ClassifierHead LoadHeadFrom(const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& text);

bool HasExtension(const std::filesystem::path& path, const char* ext);

}  // namespace oodkit::cli

#endif  // OODKIT_TOOLS_CLI_IO_H_
