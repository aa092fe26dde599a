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
#include <string>
#include <string_view>
#include <vector>

#include "penn/corpus.hpp"
#include "penn/model_io.hpp"
#include "penn/trainer.hpp"

namespace penn {

// Interpolation weight for character slot i of a length-I word landing on
// output slot m of M: (1 - |M*i/I - m| / M)^2.
double diem_weight(std::int32_t i, std::int32_t word_len, std::int32_t m,
                   std::int32_t multiple);

// Cached block transform for words of length I: a (I*C) x (M*C) matrix whose
// (i,m) block is diem_weight(i,I,m,M) * Identity(C). Multiplying the
// concatenated character vector by it reproduces the interpolation loop.
struct DiemTransform {
  std::int32_t word_len = 0;   // I
  std::int32_t multiple = 0;   // M
  std::int32_t char_dim = 0;   // C
  std::vector<float> matrix;   // row-major (I*C) x (M*C)
};

DiemTransform build_transform(std::int32_t word_len, std::int32_t multiple,
                              std::int32_t char_dim);

// Character vectors plus the cached transforms. Immutable after build; all
// queries are pure and safe under arbitrary parallelism.
class CharModel {
 public:
  static constexpr std::int32_t kDefaultCharDim = 32;
  static constexpr std::int32_t kDefaultMultiple = 10;
  static constexpr std::int32_t kMaxCachedLength = 20;

  CharModel() = default;
  // vectors: |char_vocab| x char_dim row-major. Transforms for word lengths
  // 1..kMaxCachedLength are built eagerly.
  CharModel(Vocabulary char_vocab, std::vector<float> vectors,
            std::int32_t char_dim, std::int32_t multiple);

  const Vocabulary& char_vocab() const { return vocab_; }
  std::int32_t char_dim() const { return char_dim_; }
  std::int32_t multiple() const { return multiple_; }
  std::int64_t output_dim() const {
    return static_cast<std::int64_t>(multiple_) * char_dim_;
  }
  const std::vector<float>& vectors() const { return vectors_; }

  // Cached instance for lengths within kMaxCachedLength.
  const DiemTransform* cached_transform(std::int32_t word_len) const;

  const ModelProvenance& prov() const { return prov_; }
  void set_prov(const ModelProvenance& p) { prov_ = p; }

  void save(const std::string& path) const;
  static CharModel load(const std::string& path);

 private:
  Vocabulary vocab_;
  std::vector<float> vectors_;
  std::int32_t char_dim_ = 0;
  std::int32_t multiple_ = 0;
  ModelProvenance prov_;
  std::vector<DiemTransform> cache_;
};

// Direct interpolation loop: for each character, its vector scaled by
// diem_weight lands on every output slot. Unknown characters contribute a
// zero vector but keep their position; an empty word is an error.
std::vector<float> interpolate(std::string_view word, const CharModel& model);

// Fast path via the cached transform; words longer than the cache fall back
// to the loop. Matches interpolate up to float accumulation order.
std::vector<float> transform_apply(std::string_view word, const CharModel& model);

// One DIEM row per vocabulary word via the fast path. Rows for words whose
// interpolation fails are zero.
std::vector<float> diem_vectors_for_vocab(const Vocabulary& vocab,
                                          const CharModel& model,
                                          std::int32_t threads = 1);

struct CharTrainOptions {
  std::int32_t char_dim = CharModel::kDefaultCharDim;
  std::int32_t multiple = CharModel::kDefaultMultiple;
  std::int32_t window = 3;
  std::uint64_t min_count = 25;
  std::int32_t negatives = 5;
  std::int32_t epochs = 1;
  // Characters sit far above any word-level subsampling threshold, so the
  // word default would discard almost the whole stream; off by default.
  double subsample_t = 0;
  std::uint64_t seed = 1;
  std::int32_t threads = 1;
  std::int64_t log_every = 10'000'000;
};

// Character embeddings via the CBOW trainer over the character stream
// (window 3 by default), packaged with the transform cache.
CharModel train_char_embeddings(const TokenStream& chars,
                                const CharTrainOptions& opt,
                                std::uint64_t corpus_hash = 0);

}  // namespace penn
