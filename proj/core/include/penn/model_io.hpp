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
#include <vector>

#include "penn/corpus.hpp"
#include "penn/store.hpp"

namespace penn {

// Fingerprints recorded at training time; merge refuses shards whose
// provenance disagrees unless forced.
struct ModelProvenance {
  std::uint64_t corpus_hash = 0;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;

  bool operator==(const ModelProvenance&) const = default;
};

struct Model {
  Vocabulary vocab;
  EmbeddingStore store;
  ModelProvenance prov;
};

// Per-offset partial model from full-parallel windowed PENN skip-gram
// training: the partition-j slices of syn0 and syn1, each |V| x P.
struct Shard {
  std::int32_t offset = 0;
  PartitionLayout layout;  // layout of the full model this shard belongs to
  Vocabulary vocab;
  std::vector<float> syn0;
  std::vector<float> syn1;
  ModelProvenance prov;
};

// Binary container: little-endian, float32 weights, header followed by the
// vocabulary block, syn0 and syn1. Round-trips are bit-exact.
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

void save_shard(const Shard& shard, const std::string& path);
Shard load_shard(const std::string& path);

// "token v1 .. vD" per line under a "<rows> <dim>" header; readable by
// standard embedding tooling.
void export_text(const Vocabulary& vocab, const float* data, std::int64_t rows,
                 std::int64_t dim, const std::string& path);

}  // namespace penn
