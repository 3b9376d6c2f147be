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

#ifndef OODKIT_RANDOM_H_
#define OODKIT_RANDOM_H_

#include <array>
#include <cstdint>
#include <span>

namespace oodkit {

// Philox4x64-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2,
// 3"), the same bijection numpy.random.Philox uses. numpy pre-increments its
// counter, so numpy's first block for counter c is Block({c + 1, ...}).
struct Philox4x64 {
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static Counter Block(Counter counter, Key key);
};

// Random-access stream of draws addressed by index. Key = (seed, stream);
// counter = (index / 4, lane_a, lane_b, 0). Draw i of the stream is word
// i % 4 of that block.
//
// Uniform(i) = (Raw(i) >> 11) * 2^-53 in [0, 1).
// Normal(2m), Normal(2m+1) are the Box-Muller pair built from uniforms 2m
// and 2m+1: r = sqrt(-2 ln(1 - U(2m))), theta = 2 pi U(2m+1),
// giving r cos(theta) and r sin(theta).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t lane_a = 0,
                std::uint64_t lane_b = 0)
      : key_{seed, stream}, lane_a_(lane_a), lane_b_(lane_b) {}

  std::uint64_t Raw(std::uint64_t index) const;
  double Uniform(std::uint64_t index) const;
  double Normal(std::uint64_t index) const;

  // out[j] = Normal(first + j). Faster than per-index calls.
  void FillNormal(std::uint64_t first, std::span<double> out) const;

 private:
  Philox4x64::Counter BlockAt(std::uint64_t block) const;

  Philox4x64::Key key_;
  std::uint64_t lane_a_;
  std::uint64_t lane_b_;
};

double UniformFromBits(std::uint64_t bits);

}  // namespace oodkit

#endif  // OODKIT_RANDOM_H_
