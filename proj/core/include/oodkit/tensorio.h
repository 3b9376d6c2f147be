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

#ifndef OODKIT_TENSORIO_H_
#define OODKIT_TENSORIO_H_

// NPY v1.0 container I/O. Tensors are "<f4" (float32, little-endian, C
// order); label vectors are "<i8". Output is byte-identical to numpy.save.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodkit/types.h"

namespace oodkit {

struct TensorFile {
  std::vector<std::size_t> shape;
  std::vector<float> data;

  std::size_t rank() const { return shape.size(); }
};

struct NpyHeader {
  std::string descr;
  bool fortran_order = false;
  std::vector<std::size_t> shape;
  std::size_t data_offset = 0;  // bytes from file start to payload

  std::size_t element_count() const;
};

// Parses the magic, version and header dict. `origin` labels error messages.
NpyHeader DecodeNpyHeader(std::string_view bytes, std::string_view origin);
NpyHeader ReadNpyHeader(const std::filesystem::path& path);

TensorFile DecodeTensor(std::string_view bytes, std::string_view origin);
std::string EncodeTensor(const TensorFile& tensor);
TensorFile ReadTensor(const std::filesystem::path& path);
void WriteTensor(const TensorFile& tensor, const std::filesystem::path& path);

std::vector<std::int64_t> DecodeLabels(std::string_view bytes,
                                       std::string_view origin);
std::string EncodeLabels(std::span<const std::int64_t> labels);
std::vector<std::int64_t> ReadLabels(const std::filesystem::path& path);
void WriteLabels(std::span<const std::int64_t> labels,
                 const std::filesystem::path& path);

// Conversions between containers and domain types. Shape errors name the
// expected rank.
ActivationBatch ToActivationBatch(const TensorFile& tensor);
FeatureBatch ToFeatureBatch(const TensorFile& tensor,
                            StatKind kind = StatKind::kRawGap);
ClassifierHead ToClassifierHead(const TensorFile& weights,
                                const TensorFile& bias);
TensorFile FromActivationBatch(const ActivationBatch& batch);
TensorFile FromMatrix(const Matrix& matrix);
TensorFile FromVector(std::span<const double> values);

}  // namespace oodkit

#endif  // OODKIT_TENSORIO_H_
