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

#include "penn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace penn {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

namespace {

const std::vector<std::string>& semantic_category_names() {
  static const std::vector<std::string> names = {
      "capital-common-countries", "capital-common", "capital-world",
      "currency", "city-in-state", "family"};
  return names;
}

CategoryKind kind_of_category(const std::string& name) {
  for (const auto& s : semantic_category_names())
    if (name == s) return CategoryKind::Semantic;
  return CategoryKind::Syntactic;
}

// Keeps the best k entries, descending score with ties broken by lower id.
struct TopK {
  explicit TopK(std::size_t k) : k(k) {}

  void offer(std::int32_t id, double score) {
    if (entries.size() < k) {
      entries.push_back({id, score});
      if (entries.size() == k) make_heap();
    } else if (better(score, id, entries.front())) {
      pop_heap();
      entries.back() = {id, score};
      push_heap();
    }
  }

  std::vector<std::pair<std::int32_t, double>> sorted() {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    return std::move(entries);
  }

 private:
  using Entry = std::pair<std::int32_t, double>;
  static bool better(double score, std::int32_t id, const Entry& than) {
    if (score != than.second) return score > than.second;
    return id < than.first;
  }
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      // min-heap on (score, -id): the weakest entry is on top
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    }
  };
  void make_heap() { std::make_heap(entries.begin(), entries.end(), Worse{}); }
  void pop_heap() { std::pop_heap(entries.begin(), entries.end(), Worse{}); }
  void push_heap() { std::push_heap(entries.begin(), entries.end(), Worse{}); }

  std::size_t k;
  std::vector<Entry> entries;
};

void parallel_for(std::size_t n, std::int32_t threads,
                  const std::function<void(std::size_t, std::size_t, int)>& fn) {
  const auto nworkers = static_cast<std::size_t>(std::max(1, threads));
  if (nworkers <= 1 || n < 2 * nworkers) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < nworkers; ++w)
    pool.emplace_back(fn, n * w / nworkers, n * (w + 1) / nworkers,
                      static_cast<int>(w));
  for (auto& t : pool) t.join();
}

}  // namespace

VectorSet VectorSet::build(const Vocabulary& vocab, const float* data,
                           std::int64_t rows, std::int64_t dim) {
  if (vocab.size() != rows) throw ParamError("vocabulary/matrix row mismatch");
  VectorSet v;
  v.dim_ = dim;
  v.words_.reserve(static_cast<std::size_t>(rows));
  for (std::int64_t r = 0; r < rows; ++r) {
    std::string w = ascii_lower(vocab.entry(static_cast<std::int32_t>(r)).token);
    if (v.index_.contains(w)) continue;  // first (most frequent) row wins
    v.index_.emplace(w, static_cast<std::int32_t>(v.words_.size()));
    v.words_.push_back(std::move(w));
    v.matrix_.insert(v.matrix_.end(), data + r * dim, data + (r + 1) * dim);
  }
  v.normalize_rows();
  return v;
}

VectorSet VectorSet::from_rows(std::vector<std::string> words,
                               std::vector<float> matrix, std::int64_t dim) {
  if (matrix.size() != words.size() * static_cast<std::size_t>(dim))
    throw ParamError("word/matrix dimension mismatch");
  VectorSet v;
  v.dim_ = dim;
  for (std::size_t r = 0; r < words.size(); ++r) {
    std::string w = ascii_lower(words[r]);
    if (v.index_.contains(w)) continue;
    v.index_.emplace(w, static_cast<std::int32_t>(v.words_.size()));
    v.words_.push_back(std::move(w));
    v.matrix_.insert(v.matrix_.end(), matrix.begin() + static_cast<std::ptrdiff_t>(r * dim),
                     matrix.begin() + static_cast<std::ptrdiff_t>((r + 1) * dim));
  }
  v.normalize_rows();
  return v;
}

VectorSet VectorSet::from_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vectors file: " + path);
  std::int64_t rows = 0, dim = 0;
  in >> rows >> dim;
  if (!in || rows < 1 || dim < 1)
    throw Error("bad vectors header in " + path);
  std::vector<std::string> words;
  std::vector<float> matrix;
  words.reserve(static_cast<std::size_t>(rows));
  matrix.reserve(static_cast<std::size_t>(rows * dim));
  for (std::int64_t r = 0; r < rows; ++r) {
    std::string w;
    in >> w;
    for (std::int64_t d = 0; d < dim; ++d) {
      float x;
      in >> x;
      matrix.push_back(x);
    }
    if (!in) throw Error("truncated vectors file: " + path);
    words.push_back(std::move(w));
  }
  return from_rows(std::move(words), std::move(matrix), dim);
}

void VectorSet::normalize_rows() {
  for (std::size_t r = 0; r < words_.size(); ++r) {
    float* row = matrix_.data() + r * static_cast<std::size_t>(dim_);
    double norm = 0;
    for (std::int64_t d = 0; d < dim_; ++d) norm += static_cast<double>(row[d]) * row[d];
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    const auto inv = static_cast<float>(1.0 / norm);
    for (std::int64_t d = 0; d < dim_; ++d) row[d] *= inv;
  }
}

std::size_t AnalogyDataset::total_quadruples() const {
  std::size_t n = 0;
  for (const auto& c : categories) n += c.quads.size();
  return n;
}

AnalogyDataset AnalogyDataset::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open analogy file: " + path);
  AnalogyDataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == ':') {
      std::string name = line.substr(1);
      const auto start = name.find_first_not_of(" \t");
      name = start == std::string::npos ? std::string() : name.substr(start);
      const auto stop = name.find_last_not_of(" \t");
      if (stop != std::string::npos) name = name.substr(0, stop + 1);
      if (name.empty())
        throw Error("analogy parse error at line " + std::to_string(line_no) +
                    ": empty category name");
      ds.categories.push_back({name, kind_of_category(name), {}});
      continue;
    }
    std::istringstream ss(line);
    std::array<std::string, 4> quad;
    std::string extra;
    if (!(ss >> quad[0] >> quad[1] >> quad[2] >> quad[3]) || (ss >> extra))
      throw Error("analogy parse error at line " + std::to_string(line_no) +
                  ": expected 4 tokens");
    if (ds.categories.empty())
      throw Error("analogy parse error at line " + std::to_string(line_no) +
                  ": quadruple before any category header");
    for (auto& w : quad) w = ascii_lower(w);
    ds.categories.back().quads.push_back(std::move(quad));
  }
  if (ds.categories.empty()) throw Error("empty analogy file: " + path);
  return ds;
}

std::optional<std::vector<ScoredWord>> answer_analogy(const VectorSet& vectors,
                                                      std::string_view a,
                                                      std::string_view b,
                                                      std::string_view c,
                                                      std::size_t top_k) {
  const std::int32_t ia = vectors.id_of(a);
  const std::int32_t ib = vectors.id_of(b);
  const std::int32_t ic = vectors.id_of(c);
  if (ia < 0 || ib < 0 || ic < 0) return std::nullopt;

  const std::int64_t dim = vectors.dim();
  std::vector<float> target(static_cast<std::size_t>(dim));
  const float* va = vectors.row(ia);
  const float* vb = vectors.row(ib);
  const float* vc = vectors.row(ic);
  double norm = 0;
  for (std::int64_t d = 0; d < dim; ++d) {
    target[static_cast<std::size_t>(d)] = vb[d] - va[d] + vc[d];
    norm += static_cast<double>(target[static_cast<std::size_t>(d)]) *
            target[static_cast<std::size_t>(d)];
  }
  norm = std::sqrt(norm);
  const double inv_norm = norm > 0 ? 1.0 / norm : 0.0;

  TopK top(top_k);
  for (std::int32_t w = 0; w < vectors.size(); ++w) {
    if (w == ia || w == ib || w == ic) continue;
    const float* vw = vectors.row(w);
    float s = 0;
    for (std::int64_t d = 0; d < dim; ++d) s += target[static_cast<std::size_t>(d)] * vw[d];
    top.offer(w, static_cast<double>(s) * inv_norm);
  }
  std::vector<ScoredWord> out;
  for (auto& [id, score] : top.sorted()) out.push_back({vectors.word(id), score});
  return out;
}

void EvalReport::compute_rollups() {
  semantic = {"SEMANTIC", CategoryKind::Semantic, 0, 0, 0};
  syntactic = {"SYNTACTIC", CategoryKind::Syntactic, 0, 0, 0};
  total = {"TOTAL", CategoryKind::Semantic, 0, 0, 0};
  for (const auto& c : categories) {
    auto& roll = c.kind == CategoryKind::Semantic ? semantic : syntactic;
    roll.correct += c.correct;
    roll.attempted += c.attempted;
    roll.skipped += c.skipped;
    total.correct += c.correct;
    total.attempted += c.attempted;
    total.skipped += c.skipped;
  }
}

std::string EvalReport::table() const {
  std::ostringstream out;
  char buf[160];
  auto emit = [&](const CategoryResult& r) {
    if (r.attempted == 0) {
      std::snprintf(buf, sizeof(buf), "%-28s %8s  (%llu skipped)\n",
                    r.name.c_str(), "n/a",
                    static_cast<unsigned long long>(r.skipped));
    } else {
      std::snprintf(buf, sizeof(buf), "%-28s %7.2f%%  (%llu/%llu, %llu skipped)\n",
                    r.name.c_str(), 100.0 * r.accuracy(),
                    static_cast<unsigned long long>(r.correct),
                    static_cast<unsigned long long>(r.attempted),
                    static_cast<unsigned long long>(r.skipped));
    }
    out << buf;
  };
  for (const auto& c : categories)
    if (c.kind == CategoryKind::Semantic) emit(c);
  emit(semantic);
  for (const auto& c : categories)
    if (c.kind == CategoryKind::Syntactic) emit(c);
  emit(syntactic);
  emit(total);
  return out.str();
}

std::string EvalReport::csv() const {
  std::ostringstream out;
  out << "category,kind,correct,attempted,skipped,accuracy\n";
  auto emit = [&](const CategoryResult& r, const char* kind) {
    out << r.name << ',' << kind << ',' << r.correct << ',' << r.attempted
        << ',' << r.skipped << ',' << r.accuracy() << "\n";
  };
  for (const auto& c : categories)
    emit(c, c.kind == CategoryKind::Semantic ? "semantic" : "syntactic");
  emit(semantic, "rollup");
  emit(syntactic, "rollup");
  emit(total, "rollup");
  return out.str();
}

namespace {

// Shared driver for plain and ensemble evaluation.
EvalReport evaluate_with(
    const AnalogyDataset& dataset, std::int32_t threads,
    const std::function<std::optional<std::string>(
        const std::array<std::string, 4>&, CategoryKind)>& top1) {
  EvalReport report;
  report.categories.reserve(dataset.categories.size());
  for (const auto& cat : dataset.categories)
    report.categories.push_back({cat.name, cat.kind, 0, 0, 0});

  struct Ref {
    std::size_t cat;
    std::size_t quad;
  };
  std::vector<Ref> refs;
  refs.reserve(dataset.total_quadruples());
  for (std::size_t c = 0; c < dataset.categories.size(); ++c)
    for (std::size_t q = 0; q < dataset.categories[c].quads.size(); ++q)
      refs.push_back({c, q});

  const auto nworkers = static_cast<std::size_t>(std::max(1, threads));
  std::vector<EvalReport> partial(nworkers);
  for (auto& p : partial) p.categories = report.categories;

  parallel_for(refs.size(), threads, [&](std::size_t begin, std::size_t end, int w) {
    auto& mine = partial[static_cast<std::size_t>(w)];
    for (std::size_t i = begin; i < end; ++i) {
      const auto& cat = dataset.categories[refs[i].cat];
      const auto& quad = cat.quads[refs[i].quad];
      auto& res = mine.categories[refs[i].cat];
      std::optional<std::string> answer = top1(quad, cat.kind);
      if (!answer.has_value()) {
        ++res.skipped;
        continue;
      }
      ++res.attempted;
      if (*answer == quad[3]) ++res.correct;
    }
  });

  for (const auto& p : partial) {
    for (std::size_t c = 0; c < report.categories.size(); ++c) {
      report.categories[c].correct += p.categories[c].correct;
      report.categories[c].attempted += p.categories[c].attempted;
      report.categories[c].skipped += p.categories[c].skipped;
    }
  }
  report.compute_rollups();
  return report;
}

}  // namespace

EvalReport evaluate(const VectorSet& vectors, const AnalogyDataset& dataset,
                    std::int32_t threads) {
  return evaluate_with(
      dataset, threads,
      [&vectors](const std::array<std::string, 4>& quad,
                 CategoryKind) -> std::optional<std::string> {
        if (vectors.id_of(quad[3]) < 0) return std::nullopt;  // d unknown
        auto ranked = answer_analogy(vectors, quad[0], quad[1], quad[2], 1);
        if (!ranked.has_value() || ranked->empty()) return std::nullopt;
        return ranked->front().word;
      });
}

std::string HeatmapResult::csv() const {
  std::ostringstream out;
  out << "category";
  for (std::int32_t j : col_offsets) out << ',' << (j > 0 ? "+" : "") << j;
  out << "\n";
  for (std::size_t r = 0; r < row_names.size(); ++r) {
    out << row_names[r];
    for (std::size_t c = 0; c < col_offsets.size(); ++c) out << ',' << at(r, c);
    out << "\n";
  }
  return out.str();
}

HeatmapResult partition_heatmap(const Vocabulary& vocab,
                                const EmbeddingStore& store,
                                const AnalogyDataset& dataset,
                                std::int32_t threads, bool ablation) {
  const PartitionLayout& layout = store.layout();
  if (layout.style != Style::Windowed || layout.embedding_partition_count() < 2)
    throw Error("partition heatmap requires a windowed multi-partition model");

  const std::int32_t c = layout.window;
  const std::int32_t pdim = layout.partition_dim;
  const auto rows = static_cast<std::size_t>(store.vocab_size());
  const auto full_dim = static_cast<std::size_t>(store.embedding_dim());

  HeatmapResult result;
  for (std::int32_t j = -c; j <= c; ++j)
    if (j != 0) result.col_offsets.push_back(j);
  for (const auto& cat : dataset.categories) result.row_names.push_back(cat.name);
  result.accuracy.assign(result.row_names.size() * result.col_offsets.size(), 0.0);

  for (std::size_t col = 0; col < result.col_offsets.size(); ++col) {
    const OffsetTarget at = partition_of(layout, result.col_offsets[col]);
    std::vector<float> slice;
    std::int64_t dim;
    if (ablation) {
      dim = static_cast<std::int64_t>(full_dim);
      slice.assign(store.syn0().begin(), store.syn0().end());
      for (std::size_t r = 0; r < rows; ++r)
        std::fill_n(slice.begin() +
                        static_cast<std::ptrdiff_t>(r * full_dim +
                                                    static_cast<std::size_t>(at.embedding) * pdim),
                    pdim, 0.0f);
    } else {
      dim = pdim;
      slice.resize(rows * static_cast<std::size_t>(pdim));
      for (std::size_t r = 0; r < rows; ++r) {
        auto src = store.syn0_part(static_cast<std::int64_t>(r), at.embedding);
        std::copy(src.begin(), src.end(),
                  slice.begin() + static_cast<std::ptrdiff_t>(r * static_cast<std::size_t>(pdim)));
      }
    }
    VectorSet vs = VectorSet::build(vocab, slice.data(),
                                    static_cast<std::int64_t>(rows), dim);
    EvalReport rep = evaluate(vs, dataset, threads);
    for (std::size_t row = 0; row < rep.categories.size(); ++row)
      result.accuracy[row * result.col_offsets.size() + col] =
          rep.categories[row].accuracy();
  }

  const std::size_t ncols = result.col_offsets.size();
  result.argmax_col.resize(result.row_names.size());
  result.is_max.assign(result.row_names.size(), std::vector<bool>(ncols, false));
  for (std::size_t row = 0; row < result.row_names.size(); ++row) {
    double best = result.at(row, 0);
    std::size_t best_col = 0;
    for (std::size_t col = 1; col < ncols; ++col) {
      if (result.at(row, col) > best) {
        best = result.at(row, col);
        best_col = col;
      }
    }
    result.argmax_col[row] = static_cast<std::int32_t>(best_col);
    for (std::size_t col = 0; col < ncols; ++col)
      result.is_max[row][col] = result.at(row, col) >= best - 0.01;  // 1 point
  }
  return result;
}

namespace {

double signed_power(double s, double power) {
  if (power == 1.0) return s;
  const double mag = std::pow(std::abs(s), power);
  return s < 0 ? -mag : mag;
}

void validate_spec(const EnsembleSpec& spec) {
  if (spec.members.empty()) throw ParamError("ensemble has no members");
  bool has_word = false;
  for (const auto& m : spec.members) {
    if (m.vectors == nullptr) throw ParamError("ensemble member has no vectors");
    if (m.power <= 0) throw ParamError("ensemble powers must be positive");
    if (!m.is_diem) has_word = true;
  }
  if (!has_word) throw ParamError("ensemble needs at least one word-space member");
}

}  // namespace

std::optional<std::vector<ScoredWord>> ensemble_query(const EnsembleSpec& spec,
                                                      std::string_view a,
                                                      std::string_view b,
                                                      std::string_view c,
                                                      bool syntactic_query) {
  validate_spec(spec);
  const EnsembleMember* lead = nullptr;
  for (const auto& m : spec.members)
    if (!m.is_diem) {
      lead = &m;
      break;
    }
  auto candidates = answer_analogy(*lead->vectors, a, b, c, spec.top_k);
  if (!candidates.has_value()) return std::nullopt;

  struct MemberQuery {
    const EnsembleMember* member;
    std::vector<float> target;  // unnormalized b - a + c
    double inv_norm;
  };
  std::vector<MemberQuery> queries;
  for (const auto& m : spec.members) {
    if (m.is_diem && spec.diem_syntactic_only && !syntactic_query) continue;
    const std::int32_t ia = m.vectors->id_of(a);
    const std::int32_t ib = m.vectors->id_of(b);
    const std::int32_t ic = m.vectors->id_of(c);
    if (ia < 0 || ib < 0 || ic < 0) continue;  // member contributes nothing
    MemberQuery q;
    q.member = &m;
    const std::int64_t dim = m.vectors->dim();
    q.target.resize(static_cast<std::size_t>(dim));
    double norm = 0;
    for (std::int64_t d = 0; d < dim; ++d) {
      const float t = m.vectors->row(ib)[d] - m.vectors->row(ia)[d] +
                      m.vectors->row(ic)[d];
      q.target[static_cast<std::size_t>(d)] = t;
      norm += static_cast<double>(t) * t;
    }
    q.inv_norm = norm > 0 ? 1.0 / std::sqrt(norm) : 0.0;
    queries.push_back(std::move(q));
  }

  std::vector<ScoredWord> combined;
  combined.reserve(candidates->size());
  for (const auto& cand : *candidates) {
    double score = 0;
    for (const auto& q : queries) {
      const std::int32_t id = q.member->vectors->id_of(cand.word);
      if (id < 0) continue;
      const float* row = q.member->vectors->row(id);
      double s = 0;
      for (std::size_t d = 0; d < q.target.size(); ++d) s += q.target[d] * row[d];
      score += signed_power(s * q.inv_norm, q.member->power);
    }
    combined.push_back({cand.word, score});
  }
  std::stable_sort(combined.begin(), combined.end(),
                   [](const ScoredWord& x, const ScoredWord& y) {
                     return x.score > y.score;
                   });
  return combined;
}

EvalReport ensemble_evaluate(const EnsembleSpec& spec,
                             const AnalogyDataset& dataset,
                             std::int32_t threads) {
  validate_spec(spec);
  return evaluate_with(
      dataset, threads,
      [&spec](const std::array<std::string, 4>& quad,
              CategoryKind kind) -> std::optional<std::string> {
        const EnsembleMember* lead = nullptr;
        for (const auto& m : spec.members)
          if (!m.is_diem) {
            lead = &m;
            break;
          }
        if (lead->vectors->id_of(quad[3]) < 0) return std::nullopt;
        auto ranked = ensemble_query(spec, quad[0], quad[1], quad[2],
                                     kind == CategoryKind::Syntactic);
        if (!ranked.has_value() || ranked->empty()) return std::nullopt;
        return ranked->front().word;
      });
}

std::vector<ScoredWord> nearest(const VectorSet& vectors, std::string_view word,
                                std::size_t k) {
  const std::int32_t id = vectors.id_of(word);
  if (id < 0) throw Error("word not in vocabulary: " + std::string(word));
  const float* row = vectors.row(id);
  double norm = 0;
  for (std::int64_t d = 0; d < vectors.dim(); ++d)
    norm += static_cast<double>(row[d]) * row[d];
  if (norm == 0) throw Error("zero-norm query");

  TopK top(std::min<std::size_t>(k, static_cast<std::size_t>(vectors.size())));
  for (std::int32_t w = 0; w < vectors.size(); ++w) {
    if (w == id) continue;
    const float* vw = vectors.row(w);
    float s = 0;
    for (std::int64_t d = 0; d < vectors.dim(); ++d) s += row[d] * vw[d];
    top.offer(w, s);
  }
  std::vector<ScoredWord> out;
  for (auto& [i, score] : top.sorted()) out.push_back({vectors.word(i), score});
  return out;
}

std::vector<ScoredWord> nearest(const VectorSet& vectors,
                                std::span<const float> query, std::size_t k) {
  if (static_cast<std::int64_t>(query.size()) != vectors.dim())
    throw ParamError("query dimension mismatch");
  double norm = 0;
  for (float x : query) norm += static_cast<double>(x) * x;
  norm = std::sqrt(norm);
  if (norm == 0) throw Error("zero-norm query");
  const double inv = 1.0 / norm;

  TopK top(std::min<std::size_t>(k, static_cast<std::size_t>(vectors.size())));
  for (std::int32_t w = 0; w < vectors.size(); ++w) {
    const float* vw = vectors.row(w);
    double s = 0;
    for (std::size_t d = 0; d < query.size(); ++d) s += query[d] * vw[d];
    top.offer(w, s * inv);
  }
  std::vector<ScoredWord> out;
  for (auto& [i, score] : top.sorted()) out.push_back({vectors.word(i), score});
  return out;
}

}  // namespace penn
