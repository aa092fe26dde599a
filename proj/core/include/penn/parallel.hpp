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

#include <span>

#include "penn/trainer.hpp"

namespace penn {

// Trains windowed PENN skip-gram restricted to one window offset. The run
// consumes the same subsampling/window streams as every other shard (and as
// the single-process run), and a negative stream derived from (seed, offset),
// so the partial matrices are exactly the partition-j slices a single-process
// run produces. Requires objective=pennsg, style=windowed, no classifier
// grouping.
Shard train_shard(const EncodedCorpus& corpus, const Vocabulary& vocab,
                  const TrainConfig& cfg, std::int32_t offset,
                  std::uint64_t corpus_hash = 0, TrainStats* stats = nullptr);

// Reassembles the single-model result from one shard per window offset.
// Errors name missing/duplicate offsets; provenance or vocabulary mismatches
// are refused unless force is set.
Model merge_shards(std::span<const Shard> shards, bool force = false);

}  // namespace penn
