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

#include "oodkit/random.h"

#include <cmath>
#include <numbers>

namespace oodkit {
namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void MulHiLo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  __extension__ using U128 = unsigned __int128;
  const U128 p = static_cast<U128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

}  // namespace

Philox4x64::Counter Philox4x64::Block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint64_t hi0, lo0, hi1, lo1;
    MulHiLo(kMul0, ctr[0], hi0, lo0);
    MulHiLo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double UniformFromBits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Philox4x64::Counter CounterStream::BlockAt(std::uint64_t block) const {
  return Philox4x64::Block({block, lane_a_, lane_b_, 0}, key_);
}

std::uint64_t CounterStream::Raw(std::uint64_t index) const {
  return BlockAt(index / 4)[index % 4];
}

double CounterStream::Uniform(std::uint64_t index) const {
  return UniformFromBits(Raw(index));
}

double CounterStream::Normal(std::uint64_t index) const {
  const std::uint64_t pair = index / 2;
  const auto block = BlockAt(pair / 2);
  const std::size_t word = (pair % 2) * 2;
  const double u1 = 1.0 - UniformFromBits(block[word]);
  const double u2 = UniformFromBits(block[word + 1]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return index % 2 == 0 ? r * std::cos(theta) : r * std::sin(theta);
}

void CounterStream::FillNormal(std::uint64_t first, std::span<double> out) const {
  std::size_t j = 0;
  // Unaligned head.
  while (j < out.size() && (first + j) % 4 != 0) {
    out[j] = Normal(first + j);
    ++j;
  }
  while (j + 4 <= out.size()) {
    const auto block = BlockAt((first + j) / 4);
    for (std::size_t w = 0; w < 4; w += 2) {
      const double u1 = 1.0 - UniformFromBits(block[w]);
      const double u2 = UniformFromBits(block[w + 1]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double theta = 2.0 * std::numbers::pi * u2;
      out[j + w] = r * std::cos(theta);
      out[j + w + 1] = r * std::sin(theta);
    }
    j += 4;
  }
  for (; j < out.size(); ++j) out[j] = Normal(first + j);
}

}  // namespace oodkit
