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

#include "penn/kvconfig.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "penn/hash.hpp"

namespace penn {

namespace {

std::string trim(const std::string& s) {
  const auto start = s.find_first_not_of(" \t\r");
  if (start == std::string::npos) return "";
  const auto stop = s.find_last_not_of(" \t\r");
  return s.substr(start, stop - start + 1);
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\'')))
    return v.substr(1, v.size() - 2);
  return v;
}

}  // namespace

KvConfig KvConfig::parse(const std::string& text) {
  KvConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string current;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw Error("config parse error at line " + std::to_string(line_no) +
                    ": unterminated section header");
      current = trim(t.substr(1, t.size() - 2));
      cfg.section_ref(current);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error("config parse error at line " + std::to_string(line_no) +
                  ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = unquote(trim(t.substr(eq + 1)));
    if (key.empty())
      throw Error("config parse error at line " + std::to_string(line_no) +
                  ": empty key");
    cfg.set(current, key, value);
  }
  return cfg;
}

KvConfig KvConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

KvConfig::Section& KvConfig::section_ref(const std::string& name) {
  for (auto& s : sections_)
    if (s.name == name) return s;
  sections_.push_back({name, {}});
  return sections_.back();
}

void KvConfig::set(const std::string& section, const std::string& key,
                   const std::string& value) {
  auto& s = section_ref(section);
  for (auto& [k, v] : s.entries) {
    if (k == key) {
      v = value;
      return;
    }
  }
  s.entries.emplace_back(key, value);
}

std::optional<std::string> KvConfig::get(const std::string& section,
                                         const std::string& key) const {
  for (const auto& s : sections_) {
    if (s.name != section) continue;
    for (const auto& [k, v] : s.entries)
      if (k == key) return v;
  }
  return std::nullopt;
}

std::vector<std::string> KvConfig::section_names() const {
  std::vector<std::string> names;
  for (const auto& s : sections_)
    if (!s.name.empty()) names.push_back(s.name);
  return names;
}

const KvConfig::Section* KvConfig::section(const std::string& name) const {
  for (const auto& s : sections_)
    if (s.name == name) return &s;
  return nullptr;
}

std::string KvConfig::canonical() const {
  std::vector<Section> sorted = sections_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Section& a, const Section& b) { return a.name < b.name; });
  std::ostringstream out;
  for (auto& s : sorted) {
    auto entries = s.entries;
    if (entries.empty() && !s.name.empty()) continue;  // drop empty sections
    std::sort(entries.begin(), entries.end());
    if (!s.name.empty()) out << '[' << s.name << "]\n";
    for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
  }
  return out.str();
}

std::uint64_t KvConfig::fingerprint() const { return fnv1a(canonical()); }

}  // namespace penn
