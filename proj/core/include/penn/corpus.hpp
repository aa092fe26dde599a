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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "penn/error.hpp"
#include "penn/rng.hpp"

namespace penn {

// UTF-8 plain-text token source. Newlines are sentence boundaries; word mode
// splits on whitespace, character mode yields one token per code point within
// each whitespace-delimited word, with each word forming its own sentence so
// that character windows never cross word boundaries.
class TokenStream {
 public:
  enum class Mode { Word, Character };

  static TokenStream from_file(std::string path, Mode mode = Mode::Word);
  static TokenStream from_string(std::string text, Mode mode = Mode::Word);

  // Invokes fn once per sentence with views valid only during the call.
  using SentenceFn =
      std::function<void(const std::vector<std::string_view>&)>;
  void scan(const SentenceFn& fn) const;

  Mode mode() const { return mode_; }
  const std::string& path() const { return path_; }

 private:
  TokenStream(std::string path, std::string text, bool from_file, Mode mode)
      : path_(std::move(path)),
        text_(std::move(text)),
        from_file_(from_file),
        mode_(mode) {}

  void scan_text(std::string_view text, const SentenceFn& fn) const;

  std::string path_;
  std::string text_;
  bool from_file_;
  Mode mode_;
};

// Token/id map sorted by descending count (ties keep first-seen order), with
// ids dense in 0..n-1. total_tokens is the raw corpus count of retained
// tokens.
class Vocabulary {
 public:
  struct Entry {
    std::string token;
    std::uint64_t count = 0;
  };

  Vocabulary() = default;

  static Vocabulary build(const TokenStream& stream, std::uint64_t min_count);
  static Vocabulary from_entries(std::vector<Entry> entries);  // pre-sorted

  // -1 when the token is unknown.
  std::int32_t id_of(std::string_view token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : it->second;
  }
  const Entry& entry(std::int32_t id) const { return entries_.at(id); }
  std::int32_t size() const { return static_cast<std::int32_t>(entries_.size()); }
  std::uint64_t total_tokens() const { return total_tokens_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // "token<TAB>count" per line in id order under a "#tokens n #total t" header.
  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

  std::uint64_t fingerprint() const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  void rebuild_index();

  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::int32_t, StringHash, std::equal_to<>>
      index_;
  std::uint64_t total_tokens_ = 0;
};

// Smoothed unigram table for negative sampling. Token i occupies a contiguous
// span of cells proportional to count^alpha; spans tile the table exactly
// (largest-remainder rounding).
class NegativeTable {
 public:
  NegativeTable(const Vocabulary& vocab, double alpha, std::uint64_t size);

  std::int32_t sample(Rng& rng) const {
    return table_[rng.next_u64() % table_.size()];
  }
  std::uint64_t size() const { return table_.size(); }
  std::int32_t at(std::uint64_t i) const { return table_.at(i); }
  std::uint64_t span_length(std::int32_t id) const;

  static constexpr double kDefaultAlpha = 0.75;
  static constexpr std::uint64_t kDefaultSize = 100'000'000;

 private:
  std::vector<std::int32_t> table_;
};

// Probability of keeping an occurrence of `id` under frequency subsampling:
// min(1, (sqrt(f/t) + 1) * (t/f)) with f the token's corpus frequency.
double subsample_keep_probability(const Vocabulary& vocab, std::int32_t id,
                                  double t);

// Corpus pre-encoded as vocabulary ids with sentence boundaries. Out-of-vocab
// tokens are dropped; sentences longer than max_sentence are chunked, which
// also bounds window spans on unstructured single-line corpora.
struct EncodedCorpus {
  std::vector<std::int32_t> ids;
  std::vector<std::uint64_t> sentence_ends;  // exclusive prefix ends

  static constexpr std::size_t kMaxSentence = 1000;

  static EncodedCorpus encode(const TokenStream& stream,
                              const Vocabulary& vocab,
                              std::size_t max_sentence = kMaxSentence);

  std::uint64_t token_count() const { return ids.size(); }
  std::size_t sentence_count() const { return sentence_ends.size(); }
  std::pair<std::uint64_t, std::uint64_t> sentence(std::size_t s) const {
    return {s == 0 ? 0 : sentence_ends[s - 1], sentence_ends[s]};
  }
};

}  // namespace penn
