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

#include "penn/diem.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <thread>

namespace penn {

namespace {

constexpr std::uint32_t kCharMagic = 0x4D454944;  // "DIEM"
constexpr std::uint32_t kCharVersion = 1;

// Splits a word into UTF-8 code point tokens, mirroring the character
// TokenStream.
std::vector<std::string_view> split_chars(std::string_view word) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < word.size()) {
    const auto lead = static_cast<unsigned char>(word[i]);
    std::size_t n = 1;
    if (lead >= 0x80) {
      if ((lead >> 5) == 0x6) n = 2;
      else if ((lead >> 4) == 0xe) n = 3;
      else if ((lead >> 3) == 0x1e) n = 4;
    }
    n = std::min(n, word.size() - i);
    out.push_back(word.substr(i, n));
    i += n;
  }
  return out;
}

}  // namespace

double diem_weight(std::int32_t i, std::int32_t word_len, std::int32_t m,
                   std::int32_t multiple) {
  const double s = static_cast<double>(multiple) * i / word_len;
  const double d = 1.0 - std::abs(s - m) / multiple;
  return d * d;
}

DiemTransform build_transform(std::int32_t word_len, std::int32_t multiple,
                              std::int32_t char_dim) {
  if (word_len < 1 || multiple < 1 || char_dim < 1)
    throw ParamError("transform dimensions must be >= 1");
  DiemTransform t;
  t.word_len = word_len;
  t.multiple = multiple;
  t.char_dim = char_dim;
  const std::size_t rows = static_cast<std::size_t>(word_len) * char_dim;
  const std::size_t cols = static_cast<std::size_t>(multiple) * char_dim;
  t.matrix.assign(rows * cols, 0.0f);
  for (std::int32_t i = 0; i < word_len; ++i) {
    for (std::int32_t m = 0; m < multiple; ++m) {
      const auto d = static_cast<float>(diem_weight(i, word_len, m, multiple));
      for (std::int32_t c = 0; c < char_dim; ++c) {
        const std::size_t row = static_cast<std::size_t>(i) * char_dim + c;
        const std::size_t col = static_cast<std::size_t>(m) * char_dim + c;
        t.matrix[row * cols + col] = d;
      }
    }
  }
  return t;
}

CharModel::CharModel(Vocabulary char_vocab, std::vector<float> vectors,
                     std::int32_t char_dim, std::int32_t multiple)
    : vocab_(std::move(char_vocab)),
      vectors_(std::move(vectors)),
      char_dim_(char_dim),
      multiple_(multiple) {
  if (char_dim_ < 1 || multiple_ < 1)
    throw ParamError("char_dim and multiple must be >= 1");
  if (vectors_.size() != static_cast<std::size_t>(vocab_.size()) * char_dim_)
    throw ParamError("character matrix dimension mismatch");
  cache_.reserve(kMaxCachedLength);
  for (std::int32_t len = 1; len <= kMaxCachedLength; ++len)
    cache_.push_back(build_transform(len, multiple_, char_dim_));
}

const DiemTransform* CharModel::cached_transform(std::int32_t word_len) const {
  if (word_len < 1 || word_len > kMaxCachedLength) return nullptr;
  return &cache_[static_cast<std::size_t>(word_len) - 1];
}

std::vector<float> interpolate(std::string_view word, const CharModel& model) {
  const auto chars = split_chars(word);
  if (chars.empty()) throw ParamError("cannot interpolate an empty word");
  const auto len = static_cast<std::int32_t>(chars.size());
  const std::int32_t cdim = model.char_dim();
  const std::int32_t mult = model.multiple();
  std::vector<float> out(static_cast<std::size_t>(model.output_dim()), 0.0f);
  for (std::int32_t i = 0; i < len; ++i) {
    const std::int32_t id = model.char_vocab().id_of(chars[static_cast<std::size_t>(i)]);
    if (id < 0) continue;  // unknown characters contribute nothing
    const float* cv = model.vectors().data() +
                      static_cast<std::size_t>(id) * cdim;
    for (std::int32_t m = 0; m < mult; ++m) {
      const auto d = static_cast<float>(diem_weight(i, len, m, mult));
      float* slot = out.data() + static_cast<std::size_t>(m) * cdim;
      for (std::int32_t c = 0; c < cdim; ++c) slot[c] += d * cv[c];
    }
  }
  return out;
}

std::vector<float> transform_apply(std::string_view word, const CharModel& model) {
  const auto chars = split_chars(word);
  if (chars.empty()) throw ParamError("cannot interpolate an empty word");
  const auto len = static_cast<std::int32_t>(chars.size());
  const DiemTransform* t = model.cached_transform(len);
  if (t == nullptr) return interpolate(word, model);

  const std::int32_t cdim = model.char_dim();
  const std::size_t cols = static_cast<std::size_t>(model.output_dim());
  // Concatenated character vector, zeros for unknown characters.
  std::vector<float> concat(static_cast<std::size_t>(len) * cdim, 0.0f);
  for (std::int32_t i = 0; i < len; ++i) {
    const std::int32_t id = model.char_vocab().id_of(chars[static_cast<std::size_t>(i)]);
    if (id < 0) continue;
    std::memcpy(concat.data() + static_cast<std::size_t>(i) * cdim,
                model.vectors().data() + static_cast<std::size_t>(id) * cdim,
                static_cast<std::size_t>(cdim) * sizeof(float));
  }
  std::vector<float> out(cols, 0.0f);
  for (std::size_t r = 0; r < concat.size(); ++r) {
    const float x = concat[r];
    if (x == 0.0f) continue;
    const float* row = t->matrix.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) out[c] += x * row[c];
  }
  return out;
}

std::vector<float> diem_vectors_for_vocab(const Vocabulary& vocab,
                                          const CharModel& model,
                                          std::int32_t threads) {
  const auto rows = static_cast<std::size_t>(vocab.size());
  const auto dim = static_cast<std::size_t>(model.output_dim());
  std::vector<float> out(rows * dim, 0.0f);
  const auto nworkers = static_cast<std::size_t>(std::max(1, threads));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const std::string& word = vocab.entry(static_cast<std::int32_t>(r)).token;
      try {
        std::vector<float> v = transform_apply(word, model);
        std::memcpy(out.data() + r * dim, v.data(), dim * sizeof(float));
      } catch (const Error&) {
        // leave the row zero
      }
    }
  };
  if (nworkers == 1) {
    work(0, rows);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nworkers; ++w)
      pool.emplace_back(work, rows * w / nworkers, rows * (w + 1) / nworkers);
    for (auto& t : pool) t.join();
  }
  return out;
}

CharModel train_char_embeddings(const TokenStream& chars,
                                const CharTrainOptions& opt,
                                std::uint64_t corpus_hash) {
  Vocabulary char_vocab = Vocabulary::build(chars, opt.min_count);
  EncodedCorpus corpus = EncodedCorpus::encode(chars, char_vocab);

  TrainConfig cfg;
  cfg.objective = Objective::Cbow;
  cfg.layout.style = Style::Flat;
  cfg.layout.window = opt.window;
  cfg.layout.partition_dim = opt.char_dim;
  cfg.negatives = opt.negatives;
  cfg.epochs = opt.epochs;
  cfg.subsample_t = opt.subsample_t;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  cfg.log_every = opt.log_every;
  if (cfg.table_size < static_cast<std::uint64_t>(char_vocab.size()))
    cfg.table_size = static_cast<std::uint64_t>(char_vocab.size());

  Model model = train(corpus, char_vocab, cfg, corpus_hash);
  CharModel chars_model(std::move(model.vocab), std::move(model.store.syn0()),
                        opt.char_dim, opt.multiple);
  chars_model.set_prov(model.prov);
  return chars_model;
}

void CharModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for write: " + path);
  auto put = [&out](const auto& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  };
  put(kCharMagic);
  put(kCharVersion);
  put(char_dim_);
  put(multiple_);
  put(prov_.corpus_hash);
  put(prov_.config_hash);
  put(prov_.seed);
  const auto n = static_cast<std::uint64_t>(vocab_.size());
  put(n);
  for (const auto& e : vocab_.entries()) {
    const auto len = static_cast<std::uint32_t>(e.token.size());
    put(len);
    out.write(e.token.data(), len);
    put(e.count);
  }
  out.write(reinterpret_cast<const char*>(vectors_.data()),
            static_cast<std::streamsize>(vectors_.size() * sizeof(float)));
  if (!out) throw Error("I/O error while writing char model: " + path);
}

CharModel CharModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open char model: " + path);
  auto get = [&in, &path](auto& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw Error("truncated char model: " + path);
  };
  std::uint32_t magic, version;
  in.read(reinterpret_cast<char*>(&magic), sizeof(magic));
  if (!in || magic != kCharMagic) throw Error("not a penn char model: " + path);
  get(version);
  if (version != kCharVersion) throw Error("unsupported char model version");
  std::int32_t cdim, mult;
  get(cdim);
  get(mult);
  ModelProvenance prov;
  get(prov.corpus_hash);
  get(prov.config_hash);
  get(prov.seed);
  std::uint64_t n;
  get(n);
  std::vector<Vocabulary::Entry> entries;
  entries.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint32_t len;
    get(len);
    Vocabulary::Entry e;
    e.token.resize(len);
    in.read(e.token.data(), len);
    if (!in) throw Error("truncated char model: " + path);
    get(e.count);
    entries.push_back(std::move(e));
  }
  std::vector<float> vectors(n * static_cast<std::uint64_t>(cdim));
  in.read(reinterpret_cast<char*>(vectors.data()),
          static_cast<std::streamsize>(vectors.size() * sizeof(float)));
  if (!in) throw Error("truncated char model: " + path);
  CharModel model(Vocabulary::from_entries(std::move(entries)),
                  std::move(vectors), cdim, mult);
  model.set_prov(prov);
  return model;
}

}  // namespace penn
