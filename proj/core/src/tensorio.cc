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

#include "oodkit/tensorio.h"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "oodkit/error.h"

namespace oodkit {
namespace {

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicSize = 6;
constexpr std::size_t kPreambleSize = 10;  // magic + version + uint16 length
constexpr std::size_t kAlignment = 64;

std::string Quote(std::string_view s) { return "'" + std::string(s) + "'"; }

// Minimal reader for the python dict literal numpy writes.
class HeaderParser {
 public:
  HeaderParser(std::string_view text, std::string_view origin)
      : text_(text), origin_(origin) {}

  NpyHeader Parse() {
    NpyHeader header;
    bool have_descr = false, have_order = false, have_shape = false;
    Expect('{');
    while (true) {
      SkipSpace();
      if (Peek() == '}') {
        ++pos_;
        break;
      }
      const std::string key = ParseString("dict key");
      Expect(':');
      if (key == "descr") {
        header.descr = ParseString("descr");
        have_descr = true;
      } else if (key == "fortran_order") {
        header.fortran_order = ParseBool();
        have_order = true;
      } else if (key == "shape") {
        header.shape = ParseShape();
        have_shape = true;
      } else {
        Fail("unexpected key " + Quote(key));
      }
      SkipSpace();
      if (Peek() == ',') {
        ++pos_;
      } else if (Peek() != '}') {
        Fail("expected ',' or '}' after " + Quote(key));
      }
    }
    if (!have_descr) Fail("missing field 'descr'");
    if (!have_order) Fail("missing field 'fortran_order'");
    if (!have_shape) Fail("missing field 'shape'");
    return header;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kMalformedHeader,
                std::string(origin_) + ": header " + what);
  }

  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ParseString(const std::string& field) {
    SkipSpace();
    const char quote = Peek();
    if (quote != '\'' && quote != '"') Fail("field " + field + " is not a string");
    const std::size_t end = text_.find(quote, pos_ + 1);
    if (end == std::string_view::npos) Fail("unterminated string in " + field);
    std::string out(text_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return out;
  }

  bool ParseBool() {
    SkipSpace();
    if (text_.substr(pos_, 4) == "True") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "False") {
      pos_ += 5;
      return false;
    }
    Fail("field 'fortran_order' is not True/False");
  }

  std::vector<std::size_t> ParseShape() {
    Expect('(');
    std::vector<std::size_t> shape;
    while (true) {
      SkipSpace();
      if (Peek() == ')') {
        ++pos_;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(Peek()))) {
        Fail("field 'shape' has a non-integer dimension");
      }
      std::size_t value = 0;
      while (std::isdigit(static_cast<unsigned char>(Peek()))) {
        value = value * 10 + static_cast<std::size_t>(Peek() - '0');
        ++pos_;
      }
      shape.push_back(value);
      SkipSpace();
      if (Peek() == ',') {
        ++pos_;
      } else if (Peek() != ')') {
        Fail("field 'shape' is not a tuple");
      }
    }
    return shape;
  }

  std::string_view text_;
  std::string_view origin_;
  std::size_t pos_ = 0;
};

std::string ShapeString(std::span<const std::size_t> shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(shape[i]);
  }
  if (shape.size() == 1) out += ",";
  return out + ")";
}

std::string EncodeHeader(std::string_view descr,
                         std::span<const std::size_t> shape) {
  std::string dict = "{'descr': " + Quote(descr) +
                     ", 'fortran_order': False, 'shape': " + ShapeString(shape) +
                     ", }";
  const std::size_t unpadded = kPreambleSize + dict.size() + 1;
  dict.append((kAlignment - unpadded % kAlignment) % kAlignment, ' ');
  dict.push_back('\n');
  std::string out(kMagic, kMagicSize);
  out.push_back('\x01');
  out.push_back('\x00');
  out.push_back(static_cast<char>(dict.size() & 0xff));
  out.push_back(static_cast<char>((dict.size() >> 8) & 0xff));
  return out + dict;
}

void CheckShape(std::span<const std::size_t> shape, std::string_view origin) {
  if (shape.empty()) {
    throw Error(ErrorCode::kInvalidShape,
                std::string(origin) + ": field 'shape' is a scalar ()");
  }
  for (std::size_t d : shape) {
    if (d == 0) {
      throw Error(ErrorCode::kInvalidShape,
                  std::string(origin) + ": field 'shape' " + ShapeString(shape) +
                      " has a zero dimension");
    }
  }
}

template <typename Word>
Word LoadLittle(const char* p) {
  Word w = 0;
  for (std::size_t b = 0; b < sizeof(Word); ++b) {
    w |= static_cast<Word>(static_cast<unsigned char>(p[b])) << (8 * b);
  }
  return w;
}

template <typename Word>
void StoreLittle(Word w, std::string& out) {
  for (std::size_t b = 0; b < sizeof(Word); ++b) {
    out.push_back(static_cast<char>((w >> (8 * b)) & 0xff));
  }
}

// Validates descr/order/payload length and returns the payload view.
std::string_view CheckedPayload(std::string_view bytes, const NpyHeader& header,
                                std::string_view expected_descr,
                                std::size_t item_size,
                                std::string_view origin) {
  if (header.descr != expected_descr) {
    throw Error(ErrorCode::kDtypeMismatch,
                std::string(origin) + ": field 'descr' is " +
                    Quote(header.descr) + ", expected " +
                    Quote(expected_descr));
  }
  if (header.fortran_order) {
    throw Error(ErrorCode::kMalformedHeader,
                std::string(origin) + ": field 'fortran_order' must be False");
  }
  CheckShape(header.shape, origin);
  const std::size_t want = header.element_count() * item_size;
  const std::size_t have = bytes.size() - header.data_offset;
  if (have != want) {
    throw Error(ErrorCode::kTruncatedPayload,
                std::string(origin) + ": field 'shape' " +
                    ShapeString(header.shape) + " declares " +
                    std::to_string(want) + " payload bytes, file holds " +
                    std::to_string(have));
  }
  return bytes.substr(header.data_offset);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::string& bytes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string() +
                                           " for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path.string());
}

}  // namespace

std::size_t NpyHeader::element_count() const {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

NpyHeader DecodeNpyHeader(std::string_view bytes, std::string_view origin) {
  if (bytes.size() < kPreambleSize ||
      bytes.substr(0, kMagicSize) != std::string_view(kMagic, kMagicSize)) {
    throw Error(ErrorCode::kMalformedHeader,
                std::string(origin) + ": missing NPY magic");
  }
  if (bytes[6] != '\x01' || bytes[7] != '\x00') {
    throw Error(ErrorCode::kMalformedHeader,
                std::string(origin) + ": version " +
                    std::to_string(static_cast<unsigned char>(bytes[6])) + "." +
                    std::to_string(static_cast<unsigned char>(bytes[7])) +
                    " unsupported, expected 1.0");
  }
  const std::size_t header_len = LoadLittle<std::uint16_t>(bytes.data() + 8);
  if (bytes.size() < kPreambleSize + header_len) {
    throw Error(ErrorCode::kMalformedHeader,
                std::string(origin) + ": header length " +
                    std::to_string(header_len) + " exceeds file size");
  }
  NpyHeader header =
      HeaderParser(bytes.substr(kPreambleSize, header_len), origin).Parse();
  header.data_offset = kPreambleSize + header_len;
  return header;
}

NpyHeader ReadNpyHeader(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::string preamble(kPreambleSize, '\0');
  in.read(preamble.data(), kPreambleSize);
  std::size_t header_len = 0;
  if (in.gcount() == static_cast<std::streamsize>(kPreambleSize)) {
    header_len = LoadLittle<std::uint16_t>(preamble.data() + 8);
  }
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  header.resize(static_cast<std::size_t>(std::max<std::streamsize>(0, in.gcount())));
  return DecodeNpyHeader(preamble + header, path.string());
}

TensorFile DecodeTensor(std::string_view bytes, std::string_view origin) {
  const NpyHeader header = DecodeNpyHeader(bytes, origin);
  const std::string_view payload =
      CheckedPayload(bytes, header, "<f4", sizeof(float), origin);
  const std::size_t rank = header.shape.size();
  if (rank != 1 && rank != 2 && rank != 4) {
    throw Error(ErrorCode::kInvalidShape,
                std::string(origin) + ": field 'shape' " +
                    ShapeString(header.shape) + " has rank " +
                    std::to_string(rank) + ", expected 1, 2 or 4");
  }
  TensorFile tensor;
  tensor.shape = header.shape;
  tensor.data.resize(header.element_count());
  for (std::size_t i = 0; i < tensor.data.size(); ++i) {
    tensor.data[i] = std::bit_cast<float>(
        LoadLittle<std::uint32_t>(payload.data() + i * sizeof(float)));
    if (!std::isfinite(tensor.data[i])) {
      throw Error(ErrorCode::kNonFinite, std::string(origin) +
                                             ": non-finite value at index " +
                                             std::to_string(i));
    }
  }
  return tensor;
}

std::string EncodeTensor(const TensorFile& tensor) {
  CheckShape(tensor.shape, "tensor");
  std::size_t count = 1;
  for (std::size_t d : tensor.shape) count *= d;
  if (count != tensor.data.size()) {
    throw Error(ErrorCode::kInvalidShape,
                "tensor shape " + ShapeString(tensor.shape) + " needs " +
                    std::to_string(count) + " values, holds " +
                    std::to_string(tensor.data.size()));
  }
  std::string out = EncodeHeader("<f4", tensor.shape);
  out.reserve(out.size() + count * sizeof(float));
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(tensor.data[i])) {
      throw Error(ErrorCode::kNonFinite,
                  "tensor value at index " + std::to_string(i));
    }
    StoreLittle(std::bit_cast<std::uint32_t>(tensor.data[i]), out);
  }
  return out;
}

TensorFile ReadTensor(const std::filesystem::path& path) {
  return DecodeTensor(ReadFile(path), path.string());
}

void WriteTensor(const TensorFile& tensor, const std::filesystem::path& path) {
  WriteFile(EncodeTensor(tensor), path);
}

std::vector<std::int64_t> DecodeLabels(std::string_view bytes,
                                       std::string_view origin) {
  const NpyHeader header = DecodeNpyHeader(bytes, origin);
  const std::string_view payload =
      CheckedPayload(bytes, header, "<i8", sizeof(std::int64_t), origin);
  if (header.shape.size() != 1) {
    throw Error(ErrorCode::kInvalidShape,
                std::string(origin) + ": field 'shape' " +
                    ShapeString(header.shape) + " must be rank 1 for labels");
  }
  std::vector<std::int64_t> labels(header.element_count());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = static_cast<std::int64_t>(
        LoadLittle<std::uint64_t>(payload.data() + i * sizeof(std::int64_t)));
  }
  return labels;
}

std::string EncodeLabels(std::span<const std::int64_t> labels) {
  const std::vector<std::size_t> shape{labels.size()};
  CheckShape(shape, "labels");
  std::string out = EncodeHeader("<i8", shape);
  for (std::int64_t v : labels) StoreLittle(static_cast<std::uint64_t>(v), out);
  return out;
}

std::vector<std::int64_t> ReadLabels(const std::filesystem::path& path) {
  return DecodeLabels(ReadFile(path), path.string());
}

void WriteLabels(std::span<const std::int64_t> labels,
                 const std::filesystem::path& path) {
  WriteFile(EncodeLabels(labels), path);
}

ActivationBatch ToActivationBatch(const TensorFile& tensor) {
  if (tensor.rank() != 4 || tensor.shape[2] != tensor.shape[3]) {
    throw Error(ErrorCode::kInvalidShape,
                "activations must have shape (N, n, k, k), got " +
                    ShapeString(tensor.shape));
  }
  return ActivationBatch(tensor.shape[0], tensor.shape[1], tensor.shape[2],
                         tensor.data);
}

FeatureBatch ToFeatureBatch(const TensorFile& tensor, StatKind kind) {
  if (tensor.rank() != 2) {
    throw Error(ErrorCode::kInvalidShape,
                "features must have shape (N, n), got " +
                    ShapeString(tensor.shape));
  }
  return {Matrix(tensor.shape[0], tensor.shape[1],
                 std::vector<double>(tensor.data.begin(), tensor.data.end())),
          kind};
}

ClassifierHead ToClassifierHead(const TensorFile& weights,
                                const TensorFile& bias) {
  if (weights.rank() != 2) {
    throw Error(ErrorCode::kInvalidShape,
                "head weights must have shape (n, C), got " +
                    ShapeString(weights.shape));
  }
  if (bias.rank() != 1) {
    throw Error(ErrorCode::kInvalidShape,
                "head bias must have shape (C,), got " + ShapeString(bias.shape));
  }
  return ClassifierHead(
      Matrix(weights.shape[0], weights.shape[1],
             std::vector<double>(weights.data.begin(), weights.data.end())),
      std::vector<double>(bias.data.begin(), bias.data.end()));
}

TensorFile FromActivationBatch(const ActivationBatch& batch) {
  return {{batch.samples(), batch.channels(), batch.edge(), batch.edge()},
          std::vector<float>(batch.values().begin(), batch.values().end())};
}

TensorFile FromMatrix(const Matrix& matrix) {
  TensorFile t{{matrix.rows(), matrix.cols()}, {}};
  t.data.reserve(matrix.size());
  for (double v : matrix.values()) t.data.push_back(static_cast<float>(v));
  return t;
}

TensorFile FromVector(std::span<const double> values) {
  TensorFile t{{values.size()}, {}};
  t.data.reserve(values.size());
  for (double v : values) t.data.push_back(static_cast<float>(v));
  return t;
}

}  // namespace oodkit
