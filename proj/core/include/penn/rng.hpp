// Copyright 2026 The penn Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace penn {

// Deterministic splitmix64 stream. Standard-library distributions are
// implementation-defined, and the shard-merge equivalence tests need the
// exact same draw sequence on every platform, so all randomness in the
// toolkit flows through this generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n). Modulo bias is < n / 2^64 and irrelevant here.
  std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

// Derives an independent child stream from (seed, tag, index). Used to give
// subsampling, window shrinking, per-offset negative sampling and
// per-(row,partition) weight init their own streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t index = 0) {
  Rng mix(seed ^ (tag * 0xd6e8feb86659fd93ULL) ^
          (index * 0xa0761d6478bd642fULL));
  return mix.next_u64();
}

// Stream tags. Values are part of the model reproducibility contract.
namespace stream {
inline constexpr std::uint64_t kSubsample = 1;
inline constexpr std::uint64_t kWindow = 2;
inline constexpr std::uint64_t kNegative = 3;
inline constexpr std::uint64_t kInit = 4;
inline constexpr std::uint64_t kWorker = 5;
}  // namespace stream

}  // namespace penn
