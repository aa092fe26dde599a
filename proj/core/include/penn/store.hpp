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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "penn/layout.hpp"
#include "penn/rng.hpp"

namespace penn {

// The two trainable weight matrices: syn0 (input embeddings, |V| x D) and
// syn1 (output classifier weights, |V| x classifier_dim). Row r, partition p
// addresses the contiguous slice [p*P, (p+1)*P).
//
// Templated on the scalar so the gradient tests can run the identical kernels
// in double precision; the shipped weight type is float.
template <typename T>
class EmbeddingStoreT {
 public:
  EmbeddingStoreT() = default;
  EmbeddingStoreT(PartitionLayout layout, std::int64_t vocab_size)
      : layout_(layout), vocab_size_(vocab_size) {
    layout_.validate();
    if (vocab_size < 1) throw ParamError("vocab size must be >= 1");
    syn0_.assign(static_cast<std::size_t>(vocab_size) *
                     static_cast<std::size_t>(layout_.embedding_dim()),
                 T(0));
    syn1_.assign(static_cast<std::size_t>(vocab_size) *
                     static_cast<std::size_t>(layout_.classifier_dim()),
                 T(0));
  }

  const PartitionLayout& layout() const { return layout_; }
  std::int64_t vocab_size() const { return vocab_size_; }
  std::int64_t embedding_dim() const { return layout_.embedding_dim(); }
  std::int64_t classifier_dim() const { return layout_.classifier_dim(); }
  std::int32_t partition_dim() const { return layout_.partition_dim; }

  std::span<T> syn0_row(std::int64_t r) {
    return {syn0_.data() + r * embedding_dim(),
            static_cast<std::size_t>(embedding_dim())};
  }
  std::span<const T> syn0_row(std::int64_t r) const {
    return {syn0_.data() + r * embedding_dim(),
            static_cast<std::size_t>(embedding_dim())};
  }
  std::span<T> syn1_row(std::int64_t r) {
    return {syn1_.data() + r * classifier_dim(),
            static_cast<std::size_t>(classifier_dim())};
  }
  std::span<const T> syn1_row(std::int64_t r) const {
    return {syn1_.data() + r * classifier_dim(),
            static_cast<std::size_t>(classifier_dim())};
  }

  std::span<T> syn0_part(std::int64_t r, std::int32_t p) {
    check_part(r, p, layout_.embedding_partition_count());
    return syn0_row(r).subspan(static_cast<std::size_t>(p) * partition_dim(),
                               partition_dim());
  }
  std::span<const T> syn0_part(std::int64_t r, std::int32_t p) const {
    check_part(r, p, layout_.embedding_partition_count());
    return syn0_row(r).subspan(static_cast<std::size_t>(p) * partition_dim(),
                               partition_dim());
  }
  std::span<T> syn1_part(std::int64_t r, std::int32_t p) {
    check_part(r, p, layout_.classifier_partition_count());
    return syn1_row(r).subspan(static_cast<std::size_t>(p) * partition_dim(),
                               partition_dim());
  }
  std::span<const T> syn1_part(std::int64_t r, std::int32_t p) const {
    check_part(r, p, layout_.classifier_partition_count());
    return syn1_row(r).subspan(static_cast<std::size_t>(p) * partition_dim(),
                               partition_dim());
  }

  std::vector<T>& syn0() { return syn0_; }
  const std::vector<T>& syn0() const { return syn0_; }
  std::vector<T>& syn1() { return syn1_; }
  const std::vector<T>& syn1() const { return syn1_; }

  // syn0 uniform in [-0.5/D, +0.5/D) per element, syn1 zero. Each
  // (row, partition) pair draws from its own derived stream so a shard's
  // initial slice equals the corresponding slice of the full model.
  void init_weights(std::uint64_t seed) {
    const std::int32_t parts = layout_.embedding_partition_count();
    const std::int32_t dim = layout_.partition_dim;
    const double inv_d = 1.0 / static_cast<double>(embedding_dim());
    for (std::int64_t r = 0; r < vocab_size_; ++r) {
      for (std::int32_t p = 0; p < parts; ++p) {
        Rng rng(derive_seed(seed, stream::kInit,
                            static_cast<std::uint64_t>(r) * parts + p));
        auto slice = syn0_part(r, p);
        for (std::int32_t d = 0; d < dim; ++d)
          slice[d] = static_cast<T>((rng.uniform01() - 0.5) * inv_d);
      }
    }
    std::fill(syn1_.begin(), syn1_.end(), T(0));
  }

  bool all_finite() const {
    for (T v : syn0_)
      if (!std::isfinite(static_cast<double>(v))) return false;
    for (T v : syn1_)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

 private:
  void check_part(std::int64_t r, std::int32_t p, std::int32_t count) const {
    if (r < 0 || r >= vocab_size_ || p < 0 || p >= count)
      throw ParamError("row/partition index out of range");
  }

  PartitionLayout layout_;
  std::int64_t vocab_size_ = 0;
  std::vector<T> syn0_;
  std::vector<T> syn1_;
};

using EmbeddingStore = EmbeddingStoreT<float>;

// Inner product of syn0[row_a] partition a with syn1[row_b] partition b.
template <typename T>
T dot_partition(const EmbeddingStoreT<T>& store, std::int64_t row_a,
                std::int32_t part_a, std::int64_t row_b, std::int32_t part_b) {
  auto x = store.syn0_part(row_a, part_a);
  auto y = store.syn1_part(row_b, part_b);
  T sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace penn
