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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "penn/model_io.hpp"
#include "penn/sigmoid.hpp"
#include "penn/store.hpp"

using namespace penn;

TEST_CASE("windowed partition ordering") {
  PartitionLayout layout{Style::Windowed, 2, 4};
  CHECK(partition_of(layout, -2).embedding == 0);
  CHECK(partition_of(layout, -1).embedding == 1);
  CHECK(partition_of(layout, +1).embedding == 2);
  CHECK(partition_of(layout, +2).embedding == 3);
  CHECK(layout.embedding_dim() == 16);
  // Ungrouped: classifier partition matches the embedding partition.
  CHECK(partition_of(layout, -2).classifier == 0);
  CHECK(partition_of(layout, +2).classifier == 3);
}

TEST_CASE("directional sign rule") {
  PartitionLayout layout{Style::Directional, 10, 8};
  CHECK(partition_of(layout, -7).embedding == 0);
  CHECK(partition_of(layout, +3).embedding == 1);
  CHECK(layout.embedding_partition_count() == 2);
  CHECK(layout.embedding_dim() == 16);
}

TEST_CASE("windowed partition_of is a bijection for c <= 16") {
  for (std::int32_t c = 1; c <= 16; ++c) {
    PartitionLayout layout{Style::Windowed, c, 2};
    std::set<std::int32_t> seen;
    for (std::int32_t j = -c; j <= c; ++j) {
      if (j == 0) continue;
      auto at = partition_of(layout, j);
      CHECK(at.embedding >= 0);
      CHECK(at.embedding < 2 * c);
      seen.insert(at.embedding);
    }
    CHECK(seen.size() == static_cast<std::size_t>(2 * c));
  }
}

TEST_CASE("offset errors") {
  PartitionLayout layout{Style::Windowed, 3, 2};
  CHECK_THROWS_AS(partition_of(layout, 0), ParamError);
  CHECK_THROWS_AS(partition_of(layout, 4), ParamError);
  CHECK_THROWS_AS(partition_of(layout, -4), ParamError);
}

TEST_CASE("layout validation") {
  PartitionLayout bad{Style::Windowed, 0, 4};
  CHECK_THROWS_AS(bad.validate(), ParamError);
  PartitionLayout bad2{Style::Windowed, 2, 0};
  CHECK_THROWS_AS(bad2.validate(), ParamError);
  // 3 does not divide 4 embedding partitions.
  PartitionLayout bad3{Style::Windowed, 2, 4, 3};
  CHECK_THROWS_AS(bad3.validate(), ParamError);
  PartitionLayout bad4{Style::Windowed, 2, 4, 5};
  CHECK_THROWS_AS(bad4.validate(), ParamError);
  // Grouping 4 -> 2 is fine.
  PartitionLayout ok{Style::Windowed, 2, 4, 2};
  ok.validate();
  CHECK(ok.grouped());
  CHECK(ok.classifier_dim() == 8);
  CHECK(partition_of(ok, -2).classifier == 0);
  CHECK(partition_of(ok, -1).classifier == 0);
  CHECK(partition_of(ok, +1).classifier == 1);
  CHECK(partition_of(ok, +2).classifier == 1);
}

TEST_CASE("sigmoid exact values") {
  Sigmoid exact(Sigmoid::Mode::Exact);
  CHECK(exact.value(0.0) == 0.5);
  // Frozen from an arbitrary-precision oracle.
  CHECK(exact.value(2.0) == doctest::Approx(0.88079707797788244).epsilon(1e-14));
  CHECK(exact.value(1000.0) == 1.0);
  CHECK(exact.value(-1000.0) == 0.0);
}

TEST_CASE("sigmoid table mode: grid accuracy and clamping") {
  Sigmoid table(Sigmoid::Mode::Table);
  Sigmoid exact(Sigmoid::Mode::Exact);
  CHECK(table.value(0.0) == 0.5);  // 0 is a bin edge
  double max_err = 0;
  for (int i = 0; i <= 120000; ++i) {
    const double z = -6.0 + 12.0 * i / 120000.0;
    max_err = std::max(max_err, std::abs(table.value(z) - exact.value(z)));
    CHECK(table.value(z) > 0.0);
    CHECK(table.value(z) < 1.0);
  }
  CHECK(max_err < 1e-3);
  // Saturation clamps to the edge cells.
  CHECK(table.value(1e9) == table.value(6.0));
  CHECK(table.value(-1e9) == table.value(-6.0));
  CHECK(table.value(6.0) > 0.99);
}

TEST_CASE("dot_partition") {
  PartitionLayout layout{Style::Windowed, 1, 2};
  EmbeddingStore store(layout, 3);
  auto s0 = store.syn0_part(0, 0);
  s0[0] = 1;
  s0[1] = 2;
  auto s1 = store.syn1_part(1, 0);
  s1[0] = 3;
  s1[1] = 4;
  CHECK(dot_partition(store, 0, 0, 1, 0) == 11.0f);
  // Zero classifier row gives 0.
  CHECK(dot_partition(store, 0, 0, 2, 0) == 0.0f);
  CHECK_THROWS_AS(dot_partition(store, 0, 0, 3, 0), ParamError);
  CHECK_THROWS_AS(dot_partition(store, 0, 2, 0, 0), ParamError);
}

TEST_CASE("dot_partition matches a high-precision oracle on random slices") {
  PartitionLayout layout{Style::Flat, 1, 50};
  EmbeddingStoreT<double> store(layout, 2);
  Rng rng(99);
  auto x = store.syn0_part(0, 0);
  auto y = store.syn1_part(1, 0);
  long double oracle = 0;
  for (int i = 0; i < 50; ++i) {
    x[i] = rng.uniform01() * 2 - 1;
    y[i] = rng.uniform01() * 2 - 1;
    oracle += static_cast<long double>(x[i]) * y[i];
  }
  const double got = dot_partition(store, 0, 0, 1, 0);
  CHECK(std::abs(got - static_cast<double>(oracle)) <=
        1e-12 * std::max<long double>(1.0L, std::abs(oracle)));
}

TEST_CASE("init_weights range and syn1 zeros") {
  PartitionLayout layout{Style::Windowed, 2, 8};
  EmbeddingStore store(layout, 20);
  store.init_weights(7);
  const double bound = 0.5 / static_cast<double>(store.embedding_dim());
  for (float v : store.syn0()) {
    CHECK(std::abs(v) <= bound);
  }
  for (float v : store.syn1()) CHECK(v == 0.0f);
  CHECK(store.all_finite());

  // Same seed reproduces the same init.
  EmbeddingStore store2(layout, 20);
  store2.init_weights(7);
  CHECK(store.syn0() == store2.syn0());
}

TEST_CASE("model save/load round-trip is bit-identical") {
  PartitionLayout layout{Style::Windowed, 2, 3};
  Model m;
  m.vocab = Vocabulary::from_entries({{"alpha", 5}, {"beta", 3}, {"gamma", 2}});
  m.store = EmbeddingStore(layout, 3);
  m.store.init_weights(11);
  Rng rng(5);
  for (auto& v : m.store.syn1()) v = static_cast<float>(rng.uniform01() - 0.5);
  m.prov = {0x1234, 0x5678, 42};

  const std::string path = "penn_test_model.bin";
  save_model(m, path);
  Model loaded = load_model(path);
  CHECK(loaded.store.syn0() == m.store.syn0());
  CHECK(loaded.store.syn1() == m.store.syn1());
  CHECK(loaded.store.layout() == layout);
  CHECK(loaded.prov == m.prov);
  CHECK(loaded.vocab.fingerprint() == m.vocab.fingerprint());
  std::remove(path.c_str());
}

TEST_CASE("model load error paths") {
  const std::string path = "penn_test_badmodel.bin";
  {
    std::ofstream out(path, std::ios::binary);
    out << "this is not a model at all, just bytes";
  }
  CHECK_THROWS_WITH_AS(load_model(path), ("not a penn model: " + path).c_str(),
                       Error);

  // Truncated: write a real model then chop it.
  Model m;
  m.vocab = Vocabulary::from_entries({{"a", 2}, {"b", 1}});
  m.store = EmbeddingStore(PartitionLayout{Style::Flat, 1, 4}, 2);
  m.store.init_weights(1);
  save_model(m, path);
  {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 9));
  }
  CHECK_THROWS_WITH_AS(load_model(path), "truncated model file", Error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_model("no_such_model.bin"), Error);
}

TEST_CASE("text export format") {
  Model m;
  m.vocab = Vocabulary::from_entries({{"hello", 2}, {"world", 1}});
  m.store = EmbeddingStore(PartitionLayout{Style::Flat, 1, 3}, 2);
  auto r0 = m.store.syn0_row(0);
  r0[0] = 0.5f;
  r0[1] = -1.25f;
  r0[2] = 2.0f;
  const std::string path = "penn_test_vecs.txt";
  export_text(m.vocab, m.store.syn0().data(), 2, 3, path);
  std::ifstream in(path);
  std::int64_t rows, dim;
  in >> rows >> dim;
  CHECK(rows == 2);
  CHECK(dim == 3);
  std::string w;
  double a, b, c;
  in >> w >> a >> b >> c;
  CHECK(w == "hello");
  CHECK(a == doctest::Approx(0.5));
  CHECK(b == doctest::Approx(-1.25));
  CHECK(c == doctest::Approx(2.0));
  in >> w >> a >> b >> c;
  CHECK(w == "world");
  REQUIRE(static_cast<bool>(in));
  std::remove(path.c_str());
}

TEST_CASE("store rejects bad dimensions") {
  CHECK_THROWS_AS(EmbeddingStore(PartitionLayout{Style::Windowed, 2, 0}, 5),
                  ParamError);
  CHECK_THROWS_AS(EmbeddingStore(PartitionLayout{Style::Flat, 1, 4}, 0),
                  ParamError);
}
