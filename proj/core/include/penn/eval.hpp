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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "penn/model_io.hpp"

namespace penn {

std::string ascii_lower(std::string_view s);

// Unit-normalized, lowercased word->vector table used by all evaluation
// paths. Case collisions keep the first (most frequent) row; zero rows stay
// zero.
class VectorSet {
 public:
  VectorSet() = default;

  static VectorSet build(const Vocabulary& vocab, const float* data,
                         std::int64_t rows, std::int64_t dim);
  static VectorSet from_rows(std::vector<std::string> words,
                             std::vector<float> matrix, std::int64_t dim);
  // "word v1 .. vD" text format with a "<rows> <dim>" header.
  static VectorSet from_text_file(const std::string& path);

  std::int32_t id_of(std::string_view word) const {
    auto it = index_.find(ascii_lower(word));
    return it == index_.end() ? -1 : it->second;
  }
  const std::string& word(std::int32_t id) const {
    return words_[static_cast<std::size_t>(id)];
  }
  const float* row(std::int32_t id) const {
    return matrix_.data() + static_cast<std::size_t>(id) * dim_;
  }
  std::int32_t size() const { return static_cast<std::int32_t>(words_.size()); }
  std::int64_t dim() const { return dim_; }

 private:
  void normalize_rows();

  std::vector<std::string> words_;
  std::unordered_map<std::string, std::int32_t> index_;
  std::vector<float> matrix_;
  std::int64_t dim_ = 0;
};

enum class CategoryKind { Semantic, Syntactic };

struct AnalogyCategory {
  std::string name;
  CategoryKind kind;
  std::vector<std::array<std::string, 4>> quads;
};

struct AnalogyDataset {
  std::vector<AnalogyCategory> categories;

  std::size_t total_quadruples() const;
  // ": category" headers followed by four-token lines. Words are lowercased;
  // the five canonical semantic category names keep their kind, everything
  // else is syntactic.
  static AnalogyDataset parse_file(const std::string& path);
};

struct ScoredWord {
  std::string word;
  double score;
};

// 3CosAdd: ranks the vocabulary by cosine(v_b - v_a + v_c, v_w), excluding
// the query words. Returns std::nullopt when any query word is out of
// vocabulary (a skip, not a failure).
std::optional<std::vector<ScoredWord>> answer_analogy(const VectorSet& vectors,
                                                      std::string_view a,
                                                      std::string_view b,
                                                      std::string_view c,
                                                      std::size_t top_k = 1);

struct CategoryResult {
  std::string name;
  CategoryKind kind = CategoryKind::Semantic;
  std::uint64_t correct = 0;
  std::uint64_t attempted = 0;
  std::uint64_t skipped = 0;
  double accuracy() const {
    return attempted ? static_cast<double>(correct) /
                           static_cast<double>(attempted)
                     : 0.0;
  }
};

struct EvalReport {
  std::vector<CategoryResult> categories;
  CategoryResult semantic;   // rollups aggregate counts, not percentages
  CategoryResult syntactic;
  CategoryResult total;

  void compute_rollups();
  std::string table() const;
  std::string csv() const;
};

// Runs answer_analogy per quadruple; a question counts as attempted only when
// all four words are in vocabulary, correct when top-1 equals d.
EvalReport evaluate(const VectorSet& vectors, const AnalogyDataset& dataset,
                    std::int32_t threads = 1);

struct HeatmapResult {
  std::vector<std::string> row_names;
  std::vector<std::int32_t> col_offsets;  // -c..-1,+1..+c
  std::vector<double> accuracy;           // rows x cols, in [0,1]
  std::vector<std::int32_t> argmax_col;
  std::vector<std::vector<bool>> is_max;  // greens: within 1 point of row max

  double at(std::size_t row, std::size_t col) const {
    return accuracy[row * col_offsets.size() + col];
  }
  std::string csv() const;
};

// Per-partition analogy accuracy of a windowed store: each embedding
// partition's slice of syn0 is evaluated as its own (renormalized) vector
// space. Ablation mode instead zeroes the slice out of the full vector.
HeatmapResult partition_heatmap(const Vocabulary& vocab,
                                const EmbeddingStore& store,
                                const AnalogyDataset& dataset,
                                std::int32_t threads = 1,
                                bool ablation = false);

struct EnsembleMember {
  const VectorSet* vectors = nullptr;
  bool is_diem = false;
  double power = 1.0;  // sign-preserving |s|^power applied to the cosine
};

struct EnsembleSpec {
  std::vector<EnsembleMember> members;
  std::size_t top_k = 1000;
  bool diem_syntactic_only = true;
};

// Candidates come from the first word-space member's ranking; each candidate's
// combined score sums the members' power-transformed cosines (words missing
// in a member contribute 0). DIEM members only join syntactic queries when
// diem_syntactic_only is set.
std::optional<std::vector<ScoredWord>> ensemble_query(const EnsembleSpec& spec,
                                                      std::string_view a,
                                                      std::string_view b,
                                                      std::string_view c,
                                                      bool syntactic_query = true);

EvalReport ensemble_evaluate(const EnsembleSpec& spec,
                             const AnalogyDataset& dataset,
                             std::int32_t threads = 1);

// Exhaustive cosine k-NN. The word form excludes the word itself.
std::vector<ScoredWord> nearest(const VectorSet& vectors, std::string_view word,
                                std::size_t k);
std::vector<ScoredWord> nearest(const VectorSet& vectors,
                                std::span<const float> query, std::size_t k);

}  // namespace penn
