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

#include "penn/model_io.hpp"

#include <cstdio>
#include <fstream>

namespace penn {

namespace {

constexpr std::uint32_t kMagic = 0x4E4E4550;  // "PENN"
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kKindModel = 0;
constexpr std::uint32_t kKindShard = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw Error("truncated model file");
}

void write_vocab(std::ofstream& out, const Vocabulary& vocab) {
  for (const auto& e : vocab.entries()) {
    auto len = static_cast<std::uint32_t>(e.token.size());
    write_pod(out, len);
    out.write(e.token.data(), len);
    write_pod(out, e.count);
  }
}

Vocabulary read_vocab(std::ifstream& in, std::uint64_t n) {
  std::vector<Vocabulary::Entry> entries;
  entries.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint32_t len;
    read_pod(in, len);
    Vocabulary::Entry e;
    e.token.resize(len);
    in.read(e.token.data(), len);
    if (!in) throw Error("truncated model file");
    read_pod(in, e.count);
    entries.push_back(std::move(e));
  }
  return Vocabulary::from_entries(std::move(entries));
}

void write_floats(std::ofstream& out, const std::vector<float>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(float)));
}

void read_floats(std::ifstream& in, std::vector<float>& v, std::size_t n) {
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(float)));
  if (!in) throw Error("truncated model file");
}

struct Header {
  std::uint32_t kind = 0;
  PartitionLayout layout;
  std::int32_t shard_offset = 0;
  std::uint64_t vocab_size = 0;
  ModelProvenance prov;
};

void write_header(std::ofstream& out, const Header& h) {
  write_pod(out, kMagic);
  write_pod(out, kVersion);
  write_pod(out, h.kind);
  write_pod(out, static_cast<std::uint32_t>(h.layout.style));
  write_pod(out, static_cast<std::uint32_t>(h.layout.window));
  write_pod(out, static_cast<std::uint32_t>(h.layout.partition_dim));
  write_pod(out, static_cast<std::uint32_t>(
                     h.layout.classifier_partition_count()));
  write_pod(out, static_cast<std::uint32_t>(h.layout.reduce));
  write_pod(out, h.shard_offset);
  write_pod(out, h.vocab_size);
  write_pod(out, h.prov.corpus_hash);
  write_pod(out, h.prov.config_hash);
  write_pod(out, h.prov.seed);
}

Header read_header(std::ifstream& in, const std::string& path) {
  std::uint32_t magic;
  in.read(reinterpret_cast<char*>(&magic), sizeof(magic));
  if (!in || magic != kMagic) throw Error("not a penn model: " + path);
  std::uint32_t version;
  read_pod(in, version);
  if (version != kVersion)
    throw Error("unsupported penn model version " + std::to_string(version));
  Header h;
  read_pod(in, h.kind);
  std::uint32_t style, window, pdim, cls, reduce;
  read_pod(in, style);
  read_pod(in, window);
  read_pod(in, pdim);
  read_pod(in, cls);
  read_pod(in, reduce);
  if (style > 2) throw Error("bad style tag in model file");
  if (reduce > 1) throw Error("bad reduce tag in model file");
  h.layout.style = static_cast<Style>(style);
  h.layout.window = static_cast<std::int32_t>(window);
  h.layout.partition_dim = static_cast<std::int32_t>(pdim);
  h.layout.classifier_partitions = static_cast<std::int32_t>(cls);
  h.layout.reduce = static_cast<GroupReduce>(reduce);
  read_pod(in, h.shard_offset);
  read_pod(in, h.vocab_size);
  read_pod(in, h.prov.corpus_hash);
  read_pod(in, h.prov.config_hash);
  read_pod(in, h.prov.seed);
  h.layout.validate();
  if (h.vocab_size < 1) throw Error("model has empty vocabulary");
  return h;
}

void check_trailing(std::ifstream& in) {
  char c;
  if (in.read(&c, 1)) throw Error("trailing bytes in model file");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for write: " + path);
  return out;
}

}  // namespace

void save_model(const Model& model, const std::string& path) {
  Header h;
  h.kind = kKindModel;
  h.layout = model.store.layout();
  h.vocab_size = static_cast<std::uint64_t>(model.store.vocab_size());
  h.prov = model.prov;
  if (model.vocab.size() != model.store.vocab_size())
    throw Error("vocabulary/matrix dimension mismatch");
  auto out = open_out(path);
  write_header(out, h);
  write_vocab(out, model.vocab);
  write_floats(out, model.store.syn0());
  write_floats(out, model.store.syn1());
  if (!out) throw Error("I/O error while writing model: " + path);
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file: " + path);
  Header h = read_header(in, path);
  if (h.kind != kKindModel)
    throw Error("file is a shard, not a full model: " + path);
  Model m;
  m.vocab = read_vocab(in, h.vocab_size);
  m.store = EmbeddingStore(h.layout,
                           static_cast<std::int64_t>(h.vocab_size));
  read_floats(in, m.store.syn0(),
              h.vocab_size * static_cast<std::size_t>(h.layout.embedding_dim()));
  read_floats(in, m.store.syn1(),
              h.vocab_size * static_cast<std::size_t>(h.layout.classifier_dim()));
  check_trailing(in);
  m.prov = h.prov;
  return m;
}

void save_shard(const Shard& shard, const std::string& path) {
  Header h;
  h.kind = kKindShard;
  h.layout = shard.layout;
  h.shard_offset = shard.offset;
  h.vocab_size = static_cast<std::uint64_t>(shard.vocab.size());
  h.prov = shard.prov;
  const std::size_t expect =
      h.vocab_size * static_cast<std::size_t>(shard.layout.partition_dim);
  if (shard.syn0.size() != expect || shard.syn1.size() != expect)
    throw Error("shard matrix dimension mismatch");
  auto out = open_out(path);
  write_header(out, h);
  write_vocab(out, shard.vocab);
  write_floats(out, shard.syn0);
  write_floats(out, shard.syn1);
  if (!out) throw Error("I/O error while writing shard: " + path);
}

Shard load_shard(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open shard file: " + path);
  Header h = read_header(in, path);
  if (h.kind != kKindShard)
    throw Error("file is a full model, not a shard: " + path);
  Shard s;
  s.offset = h.shard_offset;
  s.layout = h.layout;
  s.vocab = read_vocab(in, h.vocab_size);
  const std::size_t n =
      h.vocab_size * static_cast<std::size_t>(h.layout.partition_dim);
  read_floats(in, s.syn0, n);
  read_floats(in, s.syn1, n);
  check_trailing(in);
  s.prov = h.prov;
  return s;
}

void export_text(const Vocabulary& vocab, const float* data, std::int64_t rows,
                 std::int64_t dim, const std::string& path) {
  if (vocab.size() != rows) throw Error("vocabulary/matrix dimension mismatch");
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error("cannot open file for write: " + path);
  std::fprintf(f, "%lld %lld\n", static_cast<long long>(rows),
               static_cast<long long>(dim));
  for (std::int64_t r = 0; r < rows; ++r) {
    std::fputs(vocab.entry(static_cast<std::int32_t>(r)).token.c_str(), f);
    for (std::int64_t d = 0; d < dim; ++d)
      std::fprintf(f, " %.6g", static_cast<double>(data[r * dim + d]));
    std::fputc('\n', f);
  }
  if (std::ferror(f)) {
    std::fclose(f);
    throw Error("I/O error while writing text export: " + path);
  }
  std::fclose(f);
}

}  // namespace penn
