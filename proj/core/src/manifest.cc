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

#include <cstdio>
#include <fstream>
#include <iterator>

#include "nlohmann/json.hpp"
#include "oodkit/error.h"
#include "oodkit/tensorio.h"

namespace oodkit {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json ParseJson(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaViolation,
                std::string(what) + " is not valid JSON: " + e.what());
  }
}

fs::path Resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string RequireString(const json& doc, const char* key,
                          std::string_view what) {
  if (!doc.contains(key)) {
    throw Error(ErrorCode::kSchemaViolation,
                std::string(what) + ": missing key '" + key + "'");
  }
  if (!doc[key].is_string()) {
    throw Error(ErrorCode::kSchemaViolation,
                std::string(what) + ": key '" + key + "' must be a string");
  }
  return doc[key].get<std::string>();
}

std::optional<fs::path> OptionalPath(const json& doc, const char* key,
                                     const fs::path& base,
                                     std::string_view what) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  return Resolve(base, RequireString(doc, key, what));
}

std::string Relative(const fs::path& path, const fs::path& base) {
  if (base.empty()) return path.generic_string();
  return path.lexically_relative(base).generic_string();
}

std::string Dims(const std::vector<std::size_t>& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    s += (i ? ", " : "") + std::to_string(shape[i]);
  }
  return s + ")";
}

void RequireFile(const fs::path& path, std::string_view key) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kSchemaViolation,
                "'" + std::string(key) + "' file does not exist: " +
                    path.string());
  }
}

[[noreturn]] void Mismatch(const std::string& a, const std::vector<std::size_t>& sa,
                           const std::string& b, const std::vector<std::size_t>& sb,
                           const std::string& detail) {
  throw Error(ErrorCode::kShapeMismatch, a + " " + Dims(sa) + " vs " + b + " " +
                                             Dims(sb) + ": " + detail);
}

}  // namespace

DatasetManifest ParseManifest(std::string_view text, const fs::path& base_dir) {
  const json doc = ParseJson(text, "manifest");
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "manifest must be a JSON object");
  }
  static const char* kKnown[] = {"split_name",   "activations", "features",
                                 "labels",       "head_weights", "head_bias",
                                 "metadata"};
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) {
      throw Error(ErrorCode::kSchemaViolation,
                  "manifest: unknown key '" + key + "'");
    }
  }
  DatasetManifest m;
  m.split_name = RequireString(doc, "split_name", "manifest");
  m.activations = OptionalPath(doc, "activations", base_dir, "manifest");
  m.features = OptionalPath(doc, "features", base_dir, "manifest");
  m.labels = OptionalPath(doc, "labels", base_dir, "manifest");
  m.head_weights =
      Resolve(base_dir, RequireString(doc, "head_weights", "manifest"));
  m.head_bias = Resolve(base_dir, RequireString(doc, "head_bias", "manifest"));
  if (!m.activations && !m.features) {
    throw Error(ErrorCode::kSchemaViolation,
                "manifest '" + m.split_name +
                    "': needs at least one of 'activations' or 'features'");
  }
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) {
      throw Error(ErrorCode::kSchemaViolation,
                  "manifest: 'metadata' must be an object");
    }
    for (const auto& [key, value] : doc["metadata"].items()) {
      m.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return m;
}

DatasetManifest LoadManifest(const fs::path& path) {
  return ParseManifest(ReadText(path), path.parent_path());
}

std::string ManifestToJson(const DatasetManifest& m, const fs::path& base_dir) {
  json doc = json::object();
  doc["split_name"] = m.split_name;
  if (m.activations) doc["activations"] = Relative(*m.activations, base_dir);
  if (m.features) doc["features"] = Relative(*m.features, base_dir);
  if (m.labels) doc["labels"] = Relative(*m.labels, base_dir);
  doc["head_weights"] = Relative(m.head_weights, base_dir);
  doc["head_bias"] = Relative(m.head_bias, base_dir);
  doc["metadata"] = json::object();
  for (const auto& [k, v] : m.metadata) doc["metadata"][k] = v;
  return doc.dump(2) + "\n";
}

void ValidateManifest(const DatasetManifest& m) {
  RequireFile(m.head_weights, "head_weights");
  RequireFile(m.head_bias, "head_bias");
  const auto w = ReadNpyHeader(m.head_weights).shape;
  const auto b = ReadNpyHeader(m.head_bias).shape;
  if (w.size() != 2) {
    throw Error(ErrorCode::kShapeMismatch,
                "head_weights " + Dims(w) + " must have rank 2 (n, C)");
  }
  if (b.size() != 1 || b[0] != w[1]) {
    Mismatch("head_weights", w, "head_bias", b, "bias length must equal C");
  }
  std::optional<std::size_t> samples;
  std::optional<std::vector<std::size_t>> sample_source;
  if (m.features) {
    RequireFile(*m.features, "features");
    const auto f = ReadNpyHeader(*m.features).shape;
    if (f.size() != 2 || f[1] != w[0]) {
      Mismatch("features", f, "head_weights", w,
               "feature width must equal head input dimension n");
    }
    samples = f[0];
    sample_source = f;
  }
  if (m.activations) {
    RequireFile(*m.activations, "activations");
    const auto a = ReadNpyHeader(*m.activations).shape;
    if (a.size() != 4 || a[1] != w[0]) {
      Mismatch("activations", a, "head_weights", w,
               "channel count must equal head input dimension n");
    }
    if (a[2] != a[3]) {
      Mismatch("activations", a, "activations", a, "maps must be square");
    }
    if (samples && *samples != a[0]) {
      Mismatch("activations", a, "features", *sample_source,
               "sample counts differ");
    }
    samples = a[0];
    sample_source = a;
  }
  if (m.labels) {
    RequireFile(*m.labels, "labels");
    const auto l = ReadNpyHeader(*m.labels).shape;
    if (l.size() != 1 || l[0] != *samples) {
      Mismatch("labels", l, m.activations ? "activations" : "features",
               *sample_source, "label count must equal sample count");
    }
  }
}

SuiteManifest ParseSuiteManifest(std::string_view text, const fs::path& base_dir) {
  const json doc = ParseJson(text, "suite");
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "suite must be a JSON object");
  }
  SuiteManifest s;
  s.name = doc.contains("name") ? RequireString(doc, "name", "suite") : "suite";
  s.id = Resolve(base_dir, RequireString(doc, "id", "suite"));
  s.id_train = OptionalPath(doc, "id_train", base_dir, "suite");
  s.proxy_val = OptionalPath(doc, "proxy_val", base_dir, "suite");
  if (!doc.contains("ood") || !doc["ood"].is_array() || doc["ood"].empty()) {
    throw Error(ErrorCode::kSchemaViolation,
                "suite: 'ood' must be a nonempty array of manifest paths");
  }
  for (const auto& entry : doc["ood"]) {
    if (!entry.is_string()) {
      throw Error(ErrorCode::kSchemaViolation, "suite: 'ood' entries must be strings");
    }
    s.ood.push_back(Resolve(base_dir, entry.get<std::string>()));
  }
  return s;
}

SuiteManifest LoadSuiteManifest(const fs::path& path) {
  return ParseSuiteManifest(ReadText(path), path.parent_path());
}

std::size_t SplitData::samples() const {
  if (activations) return activations->samples();
  return features ? features->samples() : 0;
}

std::size_t SplitData::channels() const {
  if (activations) return activations->channels();
  return features ? features->channels() : 0;
}

SplitData LoadSplit(const DatasetManifest& m) {
  ValidateManifest(m);
  SplitData split;
  split.name = m.split_name;
  if (m.activations) split.activations = ToActivationBatch(ReadTensor(*m.activations));
  if (m.features) split.features = ToFeatureBatch(ReadTensor(*m.features));
  if (m.labels) split.labels = ReadLabels(*m.labels);
  return split;
}

ClassifierHead LoadHead(const DatasetManifest& m) {
  return ToClassifierHead(ReadTensor(m.head_weights), ReadTensor(m.head_bias));
}

std::string FileDigest(const fs::path& path) {
  const std::string bytes = ReadText(path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace oodkit
