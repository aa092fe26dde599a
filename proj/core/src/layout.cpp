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

#include "penn/layout.hpp"

namespace penn {

const char* to_string(Style s) {
  switch (s) {
    case Style::Flat: return "flat";
    case Style::Windowed: return "windowed";
    case Style::Directional: return "directional";
  }
  return "?";
}

const char* to_string(GroupReduce r) {
  return r == GroupReduce::Average ? "average" : "sum";
}

Style style_from_string(const std::string& s) {
  if (s == "flat") return Style::Flat;
  if (s == "windowed") return Style::Windowed;
  if (s == "directional") return Style::Directional;
  throw ParamError("unknown style: " + s);
}

GroupReduce reduce_from_string(const std::string& s) {
  if (s == "average" || s == "avg") return GroupReduce::Average;
  if (s == "sum") return GroupReduce::Sum;
  throw ParamError("unknown group reduce: " + s);
}

void PartitionLayout::validate() const {
  if (window < 1) throw ParamError("window must be >= 1");
  if (partition_dim < 1) throw ParamError("partition_dim must be >= 1");
  const std::int32_t embed = embedding_partition_count();
  const std::int32_t cls = classifier_partition_count();
  if (cls < 1) throw ParamError("classifier partition count must be >= 1");
  if (cls > embed)
    throw ParamError(
        "classifier partition count cannot exceed embedding partitions");
  if (embed % cls != 0)
    throw ParamError(
        "classifier partition count must divide embedding partitions");
}

OffsetTarget partition_of(const PartitionLayout& layout, std::int32_t offset) {
  if (offset == 0)
    throw ParamError("offset error: 0 is the focus position");
  if (offset < -layout.window || offset > layout.window)
    throw ParamError("offset error: |" + std::to_string(offset) +
                     "| exceeds window " + std::to_string(layout.window));
  std::int32_t embed = 0;
  switch (layout.style) {
    case Style::Flat:
      embed = 0;
      break;
    case Style::Windowed:
      embed = offset < 0 ? offset + layout.window
                         : layout.window + offset - 1;
      break;
    case Style::Directional:
      embed = offset < 0 ? 0 : 1;
      break;
  }
  const std::int32_t group =
      layout.embedding_partition_count() / layout.classifier_partition_count();
  return {embed, embed / group};
}

}  // namespace penn
