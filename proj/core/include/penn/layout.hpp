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

#include "penn/error.hpp"

namespace penn {

// Flat is the degenerate single-partition layout used by the baseline
// CBOW/SG models; Windowed has one partition per signed window offset,
// Directional has one per prediction direction.
enum class Style : std::uint32_t { Flat = 0, Windowed = 1, Directional = 2 };

// How multiple embedding partitions feeding one classifier partition are
// combined on the forward pass.
enum class GroupReduce : std::uint32_t { Average = 0, Sum = 1 };

const char* to_string(Style s);
const char* to_string(GroupReduce r);
Style style_from_string(const std::string& s);
GroupReduce reduce_from_string(const std::string& s);

struct PartitionLayout {
  Style style = Style::Flat;
  std::int32_t window = 5;         // c
  std::int32_t partition_dim = 100;  // P
  // 0 resolves to the embedding partition count (no grouping).
  std::int32_t classifier_partitions = 0;
  GroupReduce reduce = GroupReduce::Average;

  std::int32_t embedding_partition_count() const {
    switch (style) {
      case Style::Flat: return 1;
      case Style::Windowed: return 2 * window;
      case Style::Directional: return 2;
    }
    return 1;
  }
  std::int32_t classifier_partition_count() const {
    return classifier_partitions > 0 ? classifier_partitions
                                     : embedding_partition_count();
  }
  std::int64_t embedding_dim() const {  // D
    return static_cast<std::int64_t>(partition_dim) *
           embedding_partition_count();
  }
  std::int64_t classifier_dim() const {
    return static_cast<std::int64_t>(partition_dim) *
           classifier_partition_count();
  }
  bool grouped() const {
    return classifier_partition_count() != embedding_partition_count();
  }

  void validate() const;

  // Equality over resolved semantics: a default (0) classifier count equals
  // an explicit full count.
  bool operator==(const PartitionLayout& o) const {
    return style == o.style && window == o.window &&
           partition_dim == o.partition_dim && reduce == o.reduce &&
           classifier_partition_count() == o.classifier_partition_count();
  }
};

struct OffsetTarget {
  std::int32_t embedding;
  std::int32_t classifier;
};

// Maps a signed window offset (nonzero, |j| <= c) to its embedding and
// classifier partitions. Windowed: offsets -c..-1,+1..+c map to 0..2c-1.
// Directional: words left of the focus (j < 0) are the forward-predicting
// partition 0, words right of it partition 1. Flat: everything is
// partition 0.
OffsetTarget partition_of(const PartitionLayout& layout, std::int32_t offset);

}  // namespace penn
