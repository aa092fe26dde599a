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
#include <optional>
#include <string>
#include <vector>

#include "penn/error.hpp"

namespace penn {

// Flat "key = value" document with [section] headers (a TOML subset).
// Canonical emission sorts sections and keys so the same effective
// configuration always hashes identically; that hash drives shard and
// pipeline provenance.
class KvConfig {
 public:
  struct Section {
    std::string name;  // "" = root
    std::vector<std::pair<std::string, std::string>> entries;
  };

  KvConfig() { sections_.push_back({"", {}}); }

  static KvConfig parse(const std::string& text);
  static KvConfig parse_file(const std::string& path);

  void set(const std::string& section, const std::string& key,
           const std::string& value);
  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  std::vector<std::string> section_names() const;
  const Section* section(const std::string& name) const;

  // Sorted sections/keys, one "key = value" per line.
  std::string canonical() const;
  std::uint64_t fingerprint() const;

 private:
  Section& section_ref(const std::string& name);

  std::vector<Section> sections_;
};

}  // namespace penn
