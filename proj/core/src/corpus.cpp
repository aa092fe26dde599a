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

#include "penn/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "penn/hash.hpp"

namespace penn {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Length of the UTF-8 sequence starting at a leading byte.
std::size_t utf8_len(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;  // invalid byte, treat as a single unit
}

std::string read_whole_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("I/O error while reading: " + path);
  return std::move(buf).str();
}

}  // namespace

TokenStream TokenStream::from_file(std::string path, Mode mode) {
  return TokenStream(std::move(path), std::string(), true, mode);
}

TokenStream TokenStream::from_string(std::string text, Mode mode) {
  return TokenStream(std::string(), std::move(text), false, mode);
}

void TokenStream::scan(const SentenceFn& fn) const {
  if (from_file_) {
    std::string text = read_whole_file(path_);
    scan_text(text, fn);
  } else {
    scan_text(text_, fn);
  }
}

void TokenStream::scan_text(std::string_view text, const SentenceFn& fn) const {
  std::vector<std::string_view> words;
  std::vector<std::string_view> chars;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = eol == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    words.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      if (i > start) words.push_back(line.substr(start, i - start));
    }
    if (mode_ == Mode::Word) {
      if (!words.empty()) fn(words);
    } else {
      // Character mode: every word is its own sentence of code points.
      for (std::string_view w : words) {
        chars.clear();
        std::size_t j = 0;
        while (j < w.size()) {
          std::size_t n = utf8_len(static_cast<unsigned char>(w[j]));
          n = std::min(n, w.size() - j);
          chars.push_back(w.substr(j, n));
          j += n;
        }
        if (!chars.empty()) fn(chars);
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
}

Vocabulary Vocabulary::build(const TokenStream& stream,
                             std::uint64_t min_count) {
  if (min_count < 1) throw ParamError("min_count must be >= 1");

  std::unordered_map<std::string, std::pair<std::uint64_t, std::uint64_t>,
                     StringHash, std::equal_to<>>
      counts;  // token -> (count, first-seen rank)
  std::uint64_t raw_tokens = 0;
  stream.scan([&](const std::vector<std::string_view>& sentence) {
    for (std::string_view tok : sentence) {
      auto it = counts.find(tok);
      if (it == counts.end()) {
        counts.emplace(std::string(tok), std::make_pair(1ULL, raw_tokens));
      } else {
        ++it->second.first;
      }
      ++raw_tokens;
    }
  });
  if (raw_tokens == 0) throw Error("empty corpus");

  struct Item {
    std::string token;
    std::uint64_t count;
    std::uint64_t seen;
  };
  std::vector<Item> items;
  items.reserve(counts.size());
  for (auto& [tok, cs] : counts) {
    if (cs.first >= min_count) items.push_back({tok, cs.first, cs.second});
  }
  if (items.empty()) throw Error("empty vocabulary: min_count too high");
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.seen < b.seen;
  });

  std::vector<Entry> entries;
  entries.reserve(items.size());
  for (auto& it : items) entries.push_back({std::move(it.token), it.count});
  return from_entries(std::move(entries));
}

Vocabulary Vocabulary::from_entries(std::vector<Entry> entries) {
  Vocabulary v;
  v.entries_ = std::move(entries);
  v.rebuild_index();
  return v;
}

void Vocabulary::rebuild_index() {
  index_.clear();
  index_.reserve(entries_.size());
  total_tokens_ = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    index_.emplace(entries_[i].token, static_cast<std::int32_t>(i));
    total_tokens_ += entries_[i].count;
  }
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open vocabulary file for write: " + path);
  out << "#tokens " << entries_.size() << " #total " << total_tokens_ << "\n";
  for (const Entry& e : entries_) out << e.token << '\t' << e.count << "\n";
  if (!out) throw Error("I/O error while writing vocabulary: " + path);
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open vocabulary file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw Error("empty vocabulary file: " + path);
  std::uint64_t n = 0, total = 0;
  if (std::sscanf(header.c_str(), "#tokens %llu #total %llu",
                  reinterpret_cast<unsigned long long*>(&n),
                  reinterpret_cast<unsigned long long*>(&total)) != 2) {
    throw Error("bad vocabulary header: " + path);
  }
  std::vector<Entry> entries;
  entries.reserve(n);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("bad vocabulary line: " + line);
    Entry e;
    e.token = line.substr(0, tab);
    e.count = std::strtoull(line.c_str() + tab + 1, nullptr, 10);
    entries.push_back(std::move(e));
  }
  if (entries.size() != n) throw Error("vocabulary entry count mismatch");
  Vocabulary v = from_entries(std::move(entries));
  if (v.total_tokens() != total) throw Error("vocabulary total mismatch");
  return v;
}

std::uint64_t Vocabulary::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  for (const Entry& e : entries_) {
    h = fnv1a(e.token, h);
    h = fnv1a(&e.count, sizeof(e.count), h);
  }
  return h;
}

NegativeTable::NegativeTable(const Vocabulary& vocab, double alpha,
                             std::uint64_t size) {
  if (alpha <= 0) throw ParamError("negative-table alpha must be > 0");
  const auto n = static_cast<std::size_t>(vocab.size());
  if (size < n) throw ParamError("negative-table size must be >= vocabulary size");

  std::vector<double> weight(n);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = std::pow(static_cast<double>(vocab.entry(
                             static_cast<std::int32_t>(i)).count),
                         alpha);
    total += weight[i];
  }

  // Largest-remainder rounding so spans tile the table exactly.
  std::vector<std::uint64_t> span(n);
  std::vector<std::pair<double, std::size_t>> frac(n);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double quota = static_cast<double>(size) * weight[i] / total;
    span[i] = static_cast<std::uint64_t>(quota);
    frac[i] = {quota - static_cast<double>(span[i]), i};
    assigned += span[i];
  }
  std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::uint64_t k = 0; assigned < size; ++k, ++assigned)
    ++span[frac[k % n].second];

  table_.reserve(size);
  for (std::size_t i = 0; i < n; ++i)
    table_.insert(table_.end(), span[i], static_cast<std::int32_t>(i));
}

std::uint64_t NegativeTable::span_length(std::int32_t id) const {
  auto lo = std::lower_bound(table_.begin(), table_.end(), id);
  auto hi = std::upper_bound(table_.begin(), table_.end(), id);
  return static_cast<std::uint64_t>(hi - lo);
}

double subsample_keep_probability(const Vocabulary& vocab, std::int32_t id,
                                  double t) {
  if (t <= 0) throw ParamError("subsample threshold must be > 0");
  if (id < 0 || id >= vocab.size()) throw ParamError("unknown token id");
  double f = static_cast<double>(vocab.entry(id).count) /
             static_cast<double>(vocab.total_tokens());
  double p = (std::sqrt(f / t) + 1.0) * (t / f);
  return p > 1.0 ? 1.0 : p;
}

EncodedCorpus EncodedCorpus::encode(const TokenStream& stream,
                                    const Vocabulary& vocab,
                                    std::size_t max_sentence) {
  EncodedCorpus corpus;
  std::size_t current_len = 0;
  stream.scan([&](const std::vector<std::string_view>& sentence) {
    current_len = 0;
    for (std::string_view tok : sentence) {
      std::int32_t id = vocab.id_of(tok);
      if (id < 0) continue;
      corpus.ids.push_back(id);
      if (++current_len == max_sentence) {
        corpus.sentence_ends.push_back(corpus.ids.size());
        current_len = 0;
      }
    }
    if (current_len > 0) corpus.sentence_ends.push_back(corpus.ids.size());
  });
  return corpus;
}

}  // namespace penn
