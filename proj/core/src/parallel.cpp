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

#include "penn/parallel.hpp"

#include <algorithm>
#include <cstring>

namespace penn {

namespace {

std::string offset_name(std::int32_t j) {
  return (j > 0 ? "+" : "") + std::to_string(j);
}

}  // namespace

Model merge_shards(std::span<const Shard> shards, bool force) {
  if (shards.empty()) throw ParamError("no shards to merge");
  const Shard& first = shards.front();
  const PartitionLayout& layout = first.layout;
  if (layout.style != Style::Windowed)
    throw Error("merge requires windowed shards");
  if (layout.grouped())
    throw Error("merge requires ungrouped classifier partitions");

  const std::int32_t c = layout.window;
  const auto expected = static_cast<std::size_t>(2 * c);
  const std::uint64_t vocab_fp = first.vocab.fingerprint();
  for (const Shard& s : shards) {
    if (s.layout != layout)
      throw Error("shard layout mismatch at offset " + offset_name(s.offset));
    if (s.vocab.size() != first.vocab.size() ||
        s.vocab.fingerprint() != vocab_fp)
      throw Error("shard vocabulary mismatch at offset " + offset_name(s.offset));
    if (!force && !(s.prov == first.prov))
      throw Error("shard provenance mismatch at offset " + offset_name(s.offset) +
                  " (use force to merge anyway)");
  }

  std::vector<const Shard*> by_offset(expected, nullptr);
  for (const Shard& s : shards) {
    const OffsetTarget at = partition_of(layout, s.offset);
    if (by_offset[static_cast<std::size_t>(at.embedding)] != nullptr)
      throw Error("duplicate shard for offset " + offset_name(s.offset));
    by_offset[static_cast<std::size_t>(at.embedding)] = &s;
  }
  for (std::int32_t j = -c; j <= c; ++j) {
    if (j == 0) continue;
    const OffsetTarget at = partition_of(layout, j);
    if (by_offset[static_cast<std::size_t>(at.embedding)] == nullptr)
      throw Error("missing shard for offset " + offset_name(j));
  }

  Model model;
  model.vocab = first.vocab;
  model.store = EmbeddingStore(layout, first.vocab.size());
  model.prov = first.prov;

  const auto rows = static_cast<std::size_t>(first.vocab.size());
  const auto pdim = static_cast<std::size_t>(layout.partition_dim);
  for (std::int32_t j = -c; j <= c; ++j) {
    if (j == 0) continue;
    const OffsetTarget at = partition_of(layout, j);
    const Shard& s = *by_offset[static_cast<std::size_t>(at.embedding)];
    if (s.syn0.size() != rows * pdim || s.syn1.size() != rows * pdim)
      throw Error("shard matrix dimension mismatch at offset " + offset_name(j));
    for (std::size_t r = 0; r < rows; ++r) {
      auto dst0 = model.store.syn0_part(static_cast<std::int64_t>(r), at.embedding);
      auto dst1 = model.store.syn1_part(static_cast<std::int64_t>(r), at.classifier);
      std::memcpy(dst0.data(), s.syn0.data() + r * pdim, pdim * sizeof(float));
      std::memcpy(dst1.data(), s.syn1.data() + r * pdim, pdim * sizeof(float));
    }
  }
  return model;
}

}  // namespace penn
