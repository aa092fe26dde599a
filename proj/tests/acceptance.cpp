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

// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; the binary
// exits nonzero if any requested criterion fails.
//
//   penn_acceptance --setup --data-dir DIR     generate the shared corpora
//   penn_acceptance --criterion N --data-dir DIR
//   penn_acceptance --data-dir DIR             run everything in order
//
// PENN_CORPUS / PENN_ANALOGIES override the generated 17M-token corpus and
// the generated canonical-shape analogy file with real artifacts.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "penn/datagen.hpp"
#include "penn/hash.hpp"
#include "penn/diem.hpp"
#include "penn/eval.hpp"
#include "penn/parallel.hpp"
#include "penn/trainer.hpp"
#include "testutil.hpp"

using namespace penn;
namespace fs = std::filesystem;

namespace {

std::string g_dir = "acceptance_data";

std::string path_of(const char* name) { return g_dir + "/" + name; }

std::string corpus17m_path() {
  if (const char* env = std::getenv("PENN_CORPUS")) return env;
  return path_of("corpus17m.txt");
}

std::string analogies_path() {
  if (const char* env = std::getenv("PENN_ANALOGIES")) return env;
  return path_of("analogies.txt");
}

void setup_data() {
  fs::create_directories(g_dir);
  if (std::getenv("PENN_CORPUS") == nullptr && !fs::exists(corpus17m_path())) {
    std::fprintf(stderr, "generating 17M-token corpus...\n");
    datagen::write_corpus(corpus17m_path(), 17'000'000, 101);
  }
  if (!fs::exists(path_of("corpus100k.txt")))
    datagen::write_corpus(path_of("corpus100k.txt"), 100'000, 102);
  if (std::getenv("PENN_ANALOGIES") == nullptr &&
      !fs::exists(analogies_path()))
    datagen::write_analogy_file(analogies_path());
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

bool report(int n, const char* what, bool ok, const Timer& t,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%.1fs%s%s)\n", ok ? "PASS" : "FAIL", n,
              what, t.seconds(), detail.empty() ? "" : "; ",
              detail.c_str());
  std::fflush(stdout);
  return ok;
}

struct LoadedData {
  Vocabulary vocab;
  EncodedCorpus corpus;
  std::uint64_t hash;
};

LoadedData load_text(const std::string& path, std::uint64_t min_count) {
  LoadedData d;
  d.hash = fnv1a_file(path);
  TokenStream stream = TokenStream::from_file(path);
  d.vocab = Vocabulary::build(stream, min_count);
  d.corpus = EncodedCorpus::encode(stream, d.vocab);
  return d;
}

// ---------------------------------------------------------------------------
// 1. Shard-merge identity: 1e5 tokens, c=2, P=8, k=3, deterministic mode.
bool criterion1() {
  Timer t;
  LoadedData d = load_text(path_of("corpus100k.txt"), 5);

  TrainConfig cfg;
  cfg.objective = Objective::PennSkipGram;
  cfg.layout = PartitionLayout{Style::Windowed, 2, 8};
  cfg.negatives = 3;
  cfg.epochs = 1;
  cfg.subsample_t = 1e-5;
  cfg.seed = 2024;
  cfg.threads = 1;
  cfg.table_size = 1'000'000;
  cfg.log_every = 0;

  Model whole = train(d.corpus, d.vocab, cfg, d.hash);
  std::vector<Shard> shards;
  for (std::int32_t j = -2; j <= 2; ++j) {
    if (j == 0) continue;
    shards.push_back(train_shard(d.corpus, d.vocab, cfg, j, d.hash));
  }
  Model merged = merge_shards(shards);
  const bool ok = merged.store.syn0() == whole.store.syn0() &&
                  merged.store.syn1() == whole.store.syn1();
  return report(1, "shard-merge equals single-process PENN-SG elementwise", ok,
                t,
                "4 shards, |V|=" + std::to_string(d.vocab.size()) +
                    ", D=" + std::to_string(whole.store.embedding_dim()));
}

// ---------------------------------------------------------------------------
// 2. Gradient correctness: analytic vs central finite differences,
// 100 randomized micro-configurations per step function.
bool criterion2() {
  Timer t;
  Rng rng(8675309);
  Workspace<double> ws;
  const Sigmoid exact(Sigmoid::Mode::Exact);
  double worst = 0;
  std::size_t checked = 0;

  for (int trial = 0; trial < 100; ++trial) {
    const auto vocab = static_cast<std::int32_t>(3 + rng.uniform_below(8));
    const auto k = static_cast<std::int32_t>(1 + rng.uniform_below(3));
    const double lr = 0.02 + rng.uniform01() * 0.3;
    std::vector<std::int32_t> negs;
    for (std::int32_t i = 0; i < k; ++i)
      negs.push_back(static_cast<std::int32_t>(rng.uniform_below(vocab)));
    const auto focus = static_cast<std::int32_t>(rng.uniform_below(vocab));
    const auto dim = static_cast<std::int32_t>(2 + rng.uniform_below(7));

    // cbow
    {
      EmbeddingStoreT<double> base(PartitionLayout{Style::Flat, 2, dim}, vocab);
      testutil::fill_random(base.syn0(), rng, 0.8);
      testutil::fill_random(base.syn1(), rng, 0.8);
      std::vector<std::int32_t> ctx;
      const auto n = 1 + rng.uniform_below(4);
      for (std::uint64_t i = 0; i < n; ++i)
        ctx.push_back(static_cast<std::int32_t>(rng.uniform_below(vocab)));
      auto res = testutil::fd_check(base, lr, [&](EmbeddingStoreT<double>& s) {
        testutil::FixedNegs d{negs};
        return step_cbow(s, std::span<const std::int32_t>(ctx), focus, k, lr, d,
                         exact, ws);
      });
      worst = std::max(worst, res.max_rel_error);
      checked += res.checked;
    }
    // sg
    {
      EmbeddingStoreT<double> base(PartitionLayout{Style::Flat, 2, dim}, vocab);
      testutil::fill_random(base.syn0(), rng, 0.8);
      testutil::fill_random(base.syn1(), rng, 0.8);
      const auto ctx = static_cast<std::int32_t>(rng.uniform_below(vocab));
      auto res = testutil::fd_check(base, lr, [&](EmbeddingStoreT<double>& s) {
        testutil::FixedNegs d{negs};
        return step_sg(s, focus, ctx, k, lr, d, exact, ws);
      });
      worst = std::max(worst, res.max_rel_error);
      checked += res.checked;
    }
    // clow: windowed or directional, grouped or not, average or sum
    {
      PartitionLayout layout{Style::Windowed, 2, 2};
      if (trial % 3 == 1) layout.style = Style::Directional;
      if (trial % 2 == 1 && layout.style == Style::Windowed)
        layout.classifier_partitions = 2;
      layout.reduce = trial % 4 == 0 ? GroupReduce::Sum : GroupReduce::Average;
      EmbeddingStoreT<double> base(layout, vocab);
      testutil::fill_random(base.syn0(), rng, 0.8);
      testutil::fill_random(base.syn1(), rng, 0.8);
      std::vector<ContextItem> items;
      for (std::int32_t j = -2; j <= 2; ++j) {
        if (j == 0 || rng.uniform_below(3) == 0) continue;
        items.push_back({static_cast<std::int32_t>(rng.uniform_below(vocab)), j});
      }
      if (items.empty()) items.push_back({0, -1});
      auto res = testutil::fd_check(base, lr, [&](EmbeddingStoreT<double>& s) {
        testutil::FixedNegs d{negs};
        return step_clow(s, std::span<const ContextItem>(items), focus, k, lr,
                         d, exact, ws);
      });
      worst = std::max(worst, res.max_rel_error);
      checked += res.checked;
    }
    // penn skip-gram: |V| <= 10, c = 2, P = 4 per the micro-config spec
    {
      EmbeddingStoreT<double> base(PartitionLayout{Style::Windowed, 2, 4}, vocab);
      testutil::fill_random(base.syn0(), rng, 0.8);
      testutil::fill_random(base.syn1(), rng, 0.8);
      const auto ctx = static_cast<std::int32_t>(rng.uniform_below(vocab));
      const std::int32_t offs[] = {-2, -1, 1, 2};
      const std::int32_t j = offs[rng.uniform_below(4)];
      auto res = testutil::fd_check(base, lr, [&](EmbeddingStoreT<double>& s) {
        testutil::FixedNegs d{negs};
        return step_penn_sg(s, focus, ctx, j, k, lr, d, exact, ws);
      });
      worst = std::max(worst, res.max_rel_error);
      checked += res.checked;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%zu weights checked, max rel err %.2e",
                checked, worst);
  return report(2, "analytic gradients match finite differences < 1e-4",
                worst < 1e-4 && checked > 0, t, detail);
}

// ---------------------------------------------------------------------------
// 3. DIEM oracle equivalence: loop vs cached transform to 1e-6 relative for
// lengths 1..30, plus the hand-derived I=2/M=2 vector.
bool criterion3() {
  Timer t;
  // Hand-derived example: orthogonal unit char vectors, C=2, M=2.
  auto vocab = Vocabulary::from_entries({{"a", 2}, {"b", 1}});
  CharModel tiny(std::move(vocab), {1.0f, 0.0f, 0.0f, 1.0f}, 2, 2);
  const std::vector<float> expect = {1.0f, 0.25f, 0.25f, 1.0f};
  bool ok = interpolate("ab", tiny) == expect &&
            transform_apply("ab", tiny) == expect;

  // Random char vectors at production dimensions, 1000+ draws across all
  // word lengths 1..30.
  std::vector<Vocabulary::Entry> entries;
  for (int i = 0; i < 26; ++i)
    entries.push_back({std::string(1, static_cast<char>('a' + i)),
                       static_cast<std::uint64_t>(26 - i)});
  Rng rng(314159);
  std::vector<float> vecs(26 * 32);
  for (auto& v : vecs) v = static_cast<float>(rng.uniform01() * 2 - 1);
  CharModel model(Vocabulary::from_entries(std::move(entries)), std::move(vecs),
                  32, 10);

  double worst = 0;
  int draws = 0;
  for (int len = 1; len <= 30; ++len) {
    for (int rep = 0; rep < 34; ++rep) {
      std::string word;
      for (int i = 0; i < len; ++i)
        word.push_back(static_cast<char>('a' + rng.uniform_below(26)));
      auto a = interpolate(word, model);
      auto b = transform_apply(word, model);
      for (std::size_t d = 0; d < a.size(); ++d) {
        if (a[d] == b[d]) continue;
        const double denom = std::max({std::abs(static_cast<double>(a[d])),
                                       std::abs(static_cast<double>(b[d])),
                                       1e-30});
        worst = std::max(
            worst, std::abs(static_cast<double>(a[d]) - b[d]) / denom);
      }
      ++draws;
    }
  }
  ok = ok && worst <= 1e-6 && draws >= 1000;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "%d draws, max rel diff %.2e", draws,
                worst);
  return report(3, "DIEM loop/transform equivalence and exact I=2 M=2 vector",
                ok, t, detail);
}

// ---------------------------------------------------------------------------
// 4. Analogy evaluator: 100% on exact parallelograms, brute-force agreement,
// chance level on random vectors.
bool criterion4() {
  Timer t;
  // (a) 1000 exact-parallelogram quadruples: a_i = e_{i+1},
  // b_i = (e_0 + e_{i+1}) / sqrt(2). The correct answer wins by a wide,
  // exactly-representable margin.
  const int n = 33;
  const std::int64_t dim = n + 1;
  {
    std::vector<std::string> names;
    std::vector<float> matrix;
    for (int i = 0; i < n; ++i) {
      std::vector<float> row(static_cast<std::size_t>(dim), 0.0f);
      names.push_back("a" + std::to_string(i));
      row[static_cast<std::size_t>(i + 1)] = 1.0f;
      matrix.insert(matrix.end(), row.begin(), row.end());
      names.push_back("b" + std::to_string(i));
      row[0] = 1.0f;
      matrix.insert(matrix.end(), row.begin(), row.end());
    }
    VectorSet v = VectorSet::from_rows(std::move(names), std::move(matrix), dim);
    AnalogyDataset ds;
    ds.categories.push_back({"parallelogram", CategoryKind::Syntactic, {}});
    for (int i = 0; i < n && ds.categories[0].quads.size() < 1000; ++i)
      for (int j = 0; j < n && ds.categories[0].quads.size() < 1000; ++j) {
        if (i == j) continue;
        ds.categories[0].quads.push_back(
            {"a" + std::to_string(i), "b" + std::to_string(i),
             "a" + std::to_string(j), "b" + std::to_string(j)});
      }
    EvalReport rep = evaluate(v, ds, 2);
    if (rep.total.attempted != 1000 || rep.total.correct != 1000)
      return report(4, "analogy evaluator correctness", false, t,
                    "parallelogram accuracy " +
                        std::to_string(100.0 * rep.total.accuracy()) + "%");
  }

  // (b) top-1 agreement with a double-precision brute-force oracle on 500
  // random queries over a 10^4-word random space.
  std::vector<std::string> names;
  std::vector<float> matrix;
  Rng rng(112233);
  const std::int32_t big_n = 10000;
  const std::int64_t big_d = 64;
  for (std::int32_t i = 0; i < big_n; ++i) {
    names.push_back("w" + std::to_string(i));
    for (std::int64_t d = 0; d < big_d; ++d)
      matrix.push_back(static_cast<float>(rng.uniform01() * 2 - 1));
  }
  VectorSet big = VectorSet::from_rows(std::move(names), std::move(matrix), big_d);

  int agree = 0;
  for (int q = 0; q < 500; ++q) {
    const std::string a = "w" + std::to_string(rng.uniform_below(big_n));
    const std::string b = "w" + std::to_string(rng.uniform_below(big_n));
    const std::string c = "w" + std::to_string(rng.uniform_below(big_n));
    auto impl = answer_analogy(big, a, b, c, 1);
    if (!impl.has_value() || impl->empty()) continue;

    const std::int32_t ia = big.id_of(a), ib = big.id_of(b), ic = big.id_of(c);
    std::vector<double> target(static_cast<std::size_t>(big_d));
    for (std::int64_t d = 0; d < big_d; ++d)
      target[static_cast<std::size_t>(d)] =
          static_cast<double>(big.row(ib)[d]) - big.row(ia)[d] + big.row(ic)[d];
    double best = -1e30;
    std::int32_t best_id = -1;
    for (std::int32_t w = 0; w < big.size(); ++w) {
      if (w == ia || w == ib || w == ic) continue;
      double s = 0;
      for (std::int64_t d = 0; d < big_d; ++d)
        s += target[static_cast<std::size_t>(d)] * big.row(w)[d];
      if (s > best) {
        best = s;
        best_id = w;
      }
    }
    if (impl->front().word == big.word(best_id)) ++agree;
  }

  // (c) chance level on random vectors: < 0.1% over 1000 random questions.
  AnalogyDataset noise;
  noise.categories.push_back({"noise", CategoryKind::Semantic, {}});
  while (noise.categories[0].quads.size() < 1000) {
    std::array<std::string, 4> quad;
    for (auto& w : quad) w = "w" + std::to_string(rng.uniform_below(big_n));
    if (quad[3] == quad[0] || quad[3] == quad[1] || quad[3] == quad[2]) continue;
    noise.categories[0].quads.push_back(quad);
  }
  EvalReport chance = evaluate(big, noise, 2);

  const bool ok = agree == 500 && chance.total.accuracy() < 0.001;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "oracle agreement %d/500, chance accuracy %.3f%%", agree,
                100.0 * chance.total.accuracy());
  return report(4, "analogy evaluator correctness", ok, t, detail);
}

// ---------------------------------------------------------------------------
// 5. Canonical dataset parse: 19,544 quadruples across 14 categories.
bool criterion5() {
  Timer t;
  auto ds = AnalogyDataset::parse_file(analogies_path());
  const bool ok =
      ds.categories.size() == 14 && ds.total_quadruples() == 19544;
  return report(5, "analogy file parses to 19,544 questions in 14 categories",
                ok, t,
                std::to_string(ds.total_quadruples()) + " questions, " +
                    std::to_string(ds.categories.size()) + " categories");
}

// ---------------------------------------------------------------------------
// 6. Character-cluster reproduction on a >= 50MB corpus.
bool criterion6() {
  Timer t;
  const std::string corpus = corpus17m_path();
  const auto bytes = fs::file_size(corpus);
  if (bytes < 50u * 1024 * 1024)
    return report(6, "character clusters (vowels vs digits)", false, t,
                  "corpus is only " + std::to_string(bytes) + " bytes");

  CharTrainOptions opt;
  opt.char_dim = 32;
  opt.multiple = 10;
  opt.window = 3;
  opt.min_count = 25;
  opt.epochs = 1;
  opt.seed = 7;
  opt.threads = 2;
  CharModel chars = train_char_embeddings(
      TokenStream::from_file(corpus, TokenStream::Mode::Character), opt,
      fnv1a_file(corpus));
  chars.save(path_of("charmodel.bin"));

  const Vocabulary& cv = chars.char_vocab();
  auto row = [&](std::int32_t id) {
    return std::span<const float>(chars.vectors().data() +
                                      static_cast<std::size_t>(id) * 32,
                                  32);
  };
  auto cos = [&](std::int32_t x, std::int32_t y) {
    double num = 0, nx = 0, ny = 0;
    auto a = row(x), b = row(y);
    for (int d = 0; d < 32; ++d) {
      num += static_cast<double>(a[d]) * b[d];
      nx += static_cast<double>(a[d]) * a[d];
      ny += static_cast<double>(b[d]) * b[d];
    }
    return num / std::sqrt(nx * ny);
  };

  std::vector<std::int32_t> vowels, digits;
  for (const char* v : {"a", "e", "i", "o", "u"})
    if (cv.id_of(v) >= 0) vowels.push_back(cv.id_of(v));
  for (char d = '0'; d <= '9'; ++d)
    if (cv.id_of(std::string(1, d)) >= 0)
      digits.push_back(cv.id_of(std::string(1, d)));
  if (vowels.size() < 5 || digits.size() < 2)
    return report(6, "character clusters (vowels vs digits)", false, t,
                  "vowels or digits missing from the character vocabulary");

  double intra = 0;
  int intra_n = 0;
  for (std::size_t i = 0; i < vowels.size(); ++i)
    for (std::size_t j = i + 1; j < vowels.size(); ++j) {
      intra += cos(vowels[i], vowels[j]);
      ++intra_n;
    }
  intra /= intra_n;
  double cross = 0;
  int cross_n = 0;
  for (std::int32_t v : vowels)
    for (std::int32_t d : digits) {
      cross += cos(v, d);
      ++cross_n;
    }
  cross /= cross_n;

  // Nearest neighbour of '1' across all characters must be a digit.
  const std::int32_t one = cv.id_of("1");
  bool nn_digit = false;
  std::string nn_char;
  if (one >= 0) {
    double best = -2;
    std::int32_t best_id = -1;
    for (std::int32_t c = 0; c < cv.size(); ++c) {
      if (c == one) continue;
      const double s = cos(one, c);
      if (s > best) {
        best = s;
        best_id = c;
      }
    }
    nn_char = cv.entry(best_id).token;
    nn_digit = nn_char.size() == 1 && nn_char[0] >= '0' && nn_char[0] <= '9';
  }

  const bool ok = intra - cross >= 0.1 && nn_digit;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "intra-vowel %.3f vs vowel-digit %.3f (margin %.3f), nn('1')='%s'",
                intra, cross, intra - cross, nn_char.c_str());
  return report(6, "character clusters (vowels vs digits)", ok, t, detail);
}

// ---------------------------------------------------------------------------
// 7. DIEM syntactic signal: singular/plural cosine beats random pairs by 0.2.
bool criterion7() {
  Timer t;
  CharModel chars;
  if (fs::exists(path_of("charmodel.bin"))) {
    chars = CharModel::load(path_of("charmodel.bin"));
  } else {
    CharTrainOptions opt;
    opt.threads = 2;
    chars = train_char_embeddings(
        TokenStream::from_file(corpus17m_path(), TokenStream::Mode::Character),
        opt, 0);
  }

  const auto& pairs = datagen::lexicon().diem_plurals;
  auto cosine = [&](const std::string& a, const std::string& b) {
    auto va = transform_apply(a, chars);
    auto vb = transform_apply(b, chars);
    double num = 0, na = 0, nb = 0;
    for (std::size_t d = 0; d < va.size(); ++d) {
      num += static_cast<double>(va[d]) * vb[d];
      na += static_cast<double>(va[d]) * va[d];
      nb += static_cast<double>(vb[d]) * vb[d];
    }
    return num / std::sqrt(na * nb);
  };

  double plural_mean = 0;
  for (int i = 0; i < 100; ++i)
    plural_mean += cosine(pairs[static_cast<std::size_t>(i)].a,
                          pairs[static_cast<std::size_t>(i)].b);
  plural_mean /= 100;

  Rng rng(5150);
  double random_mean = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = rng.uniform_below(pairs.size());
    auto y = rng.uniform_below(pairs.size());
    while (y == x) y = rng.uniform_below(pairs.size());
    random_mean += cosine(pairs[x].a, pairs[y].a);
  }
  random_mean /= 100;

  const bool ok = plural_mean - random_mean >= 0.2;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "plural pairs %.3f vs random pairs %.3f (margin %.3f)",
                plural_mean, random_mean, plural_mean - random_mean);
  return report(7, "DIEM singular/plural cosine margin >= 0.2", ok, t, detail);
}

// ---------------------------------------------------------------------------
// 8. Order sensitivity: CLOW prefers the attested bigram order; CBOW with a
// bag context scores both orders identically.
bool criterion8() {
  Timer t;
  const std::string corpus = path_of("bigrams.txt");
  auto bigrams = datagen::write_bigram_corpus(corpus, 100, 200, 303);
  LoadedData d = load_text(corpus, 1);

  TrainConfig clow_cfg;
  clow_cfg.objective = Objective::Clow;
  clow_cfg.layout = PartitionLayout{Style::Windowed, 1, 16};
  clow_cfg.negatives = 5;
  clow_cfg.epochs = 5;
  clow_cfg.subsample_t = 0;  // keep every planted occurrence
  clow_cfg.seed = 99;
  clow_cfg.threads = 2;
  clow_cfg.table_size = 1'000'000;
  clow_cfg.log_every = 0;
  Model clow = train(d.corpus, d.vocab, clow_cfg, d.hash);

  TrainConfig cbow_cfg = clow_cfg;
  cbow_cfg.objective = Objective::Cbow;
  cbow_cfg.layout.partition_dim = 32;  // same total budget as 2 x 16
  Model cbow = train(d.corpus, d.vocab, cbow_cfg, d.hash);

  // Probability the model assigns to the ordered pair "x y":
  //   sigma(score(focus x | y at +1)) * sigma(score(focus y | x at -1)).
  auto clow_pair = [&](std::int32_t x, std::int32_t y) {
    const auto plus = partition_of(clow.store.layout(), +1);
    const auto minus = partition_of(clow.store.layout(), -1);
    double s_a = 0, s_b = 0;
    auto y_plus = clow.store.syn0_part(y, plus.embedding);
    auto x_cls = clow.store.syn1_part(x, plus.classifier);
    for (std::size_t i = 0; i < y_plus.size(); ++i)
      s_a += static_cast<double>(y_plus[i]) * x_cls[i];
    auto x_minus = clow.store.syn0_part(x, minus.embedding);
    auto y_cls = clow.store.syn1_part(y, minus.classifier);
    for (std::size_t i = 0; i < x_minus.size(); ++i)
      s_b += static_cast<double>(x_minus[i]) * y_cls[i];
    return Sigmoid::exact(s_a) * Sigmoid::exact(s_b);
  };
  auto cbow_pair = [&](std::int32_t x, std::int32_t y) {
    auto dot_rows = [&](std::int32_t ctx, std::int32_t focus) {
      auto h = cbow.store.syn0_row(ctx);
      auto o = cbow.store.syn1_row(focus);
      float s = 0;
      for (std::size_t i = 0; i < h.size(); ++i) s += h[i] * o[i];
      return static_cast<double>(s);
    };
    return Sigmoid::exact(dot_rows(y, x)) * Sigmoid::exact(dot_rows(x, y));
  };

  int clow_prefers = 0;
  bool cbow_equal = true;
  for (const auto& [left_w, right_w] : bigrams) {
    const std::int32_t u = d.vocab.id_of(left_w);
    const std::int32_t v = d.vocab.id_of(right_w);
    if (u < 0 || v < 0) continue;
    if (clow_pair(u, v) > clow_pair(v, u)) ++clow_prefers;
    if (cbow_pair(u, v) != cbow_pair(v, u)) cbow_equal = false;
  }

  const bool ok = clow_prefers >= 95 && cbow_equal;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "CLOW prefers attested order %d/100; CBOW orders identical: %s",
                clow_prefers, cbow_equal ? "yes" : "no");
  return report(8, "PENN encodes bigram order, CBOW is order-blind", ok, t,
                detail);
}

// ---------------------------------------------------------------------------
// 9. Scaled-down Table-3 direction: CLOW(c=2, D=200) beats CBOW(c=2, D=200)
// on syntactic accuracy under identical budgets.
bool criterion9() {
  Timer t;
  LoadedData d = load_text(corpus17m_path(), 5);
  AnalogyDataset dataset = AnalogyDataset::parse_file(analogies_path());

  TrainConfig clow_cfg;
  clow_cfg.objective = Objective::Clow;
  clow_cfg.layout = PartitionLayout{Style::Windowed, 2, 50};  // D = 200
  clow_cfg.negatives = 5;
  clow_cfg.epochs = 2;
  clow_cfg.subsample_t = 1e-4;
  clow_cfg.seed = 11;
  clow_cfg.threads = 2;
  clow_cfg.table_size = 10'000'000;
  Model clow = train(d.corpus, d.vocab, clow_cfg, d.hash);
  save_model(clow, path_of("clow_c9.model"));

  TrainConfig cbow_cfg = clow_cfg;
  cbow_cfg.objective = Objective::Cbow;
  cbow_cfg.layout.partition_dim = 200;  // flat D = 200
  Model cbow = train(d.corpus, d.vocab, cbow_cfg, d.hash);
  save_model(cbow, path_of("cbow_c9.model"));

  VectorSet clow_v =
      VectorSet::build(clow.vocab, clow.store.syn0().data(),
                       clow.store.vocab_size(), clow.store.embedding_dim());
  VectorSet cbow_v =
      VectorSet::build(cbow.vocab, cbow.store.syn0().data(),
                       cbow.store.vocab_size(), cbow.store.embedding_dim());
  EvalReport clow_rep = evaluate(clow_v, dataset, 2);
  EvalReport cbow_rep = evaluate(cbow_v, dataset, 2);

  const double clow_syn = clow_rep.syntactic.accuracy();
  const double cbow_syn = cbow_rep.syntactic.accuracy();
  const bool ok = clow_syn > cbow_syn;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "syntactic: CLOW %.2f%% vs CBOW %.2f%% (total %.2f%% vs %.2f%%)",
                100 * clow_syn, 100 * cbow_syn,
                100 * clow_rep.total.accuracy(),
                100 * cbow_rep.total.accuracy());
  return report(9, "CLOW beats CBOW on syntactic analogies at equal budgets",
                ok, t, detail);
}

// ---------------------------------------------------------------------------
// 10. Heatmap sanity: some syntactic category peaks at an adjacent offset.
bool criterion10() {
  Timer t;
  if (!fs::exists(path_of("clow_c9.model")))
    return report(10, "heatmap peaks at an adjacent offset", false, t,
                  "clow_c9.model missing (run criterion 9 first)");
  Model clow = load_model(path_of("clow_c9.model"));
  AnalogyDataset dataset = AnalogyDataset::parse_file(analogies_path());

  HeatmapResult hm = partition_heatmap(clow.vocab, clow.store, dataset, 2);
  {
    std::ofstream out(path_of("heatmap_c10.csv"));
    out << hm.csv();
  }

  int adjacent_peaks = 0;
  std::string example;
  for (std::size_t row = 0; row < hm.row_names.size(); ++row) {
    if (hm.row_names[row].rfind("gram", 0) != 0) continue;  // syntactic only
    const std::int32_t off =
        hm.col_offsets[static_cast<std::size_t>(hm.argmax_col[row])];
    if (off == 1 || off == -1) {
      ++adjacent_peaks;
      if (example.empty()) example = hm.row_names[row];
    }
  }
  const bool ok = adjacent_peaks >= 1;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%d/9 syntactic categories peak at |j|=1 (e.g. %s)",
                adjacent_peaks, example.empty() ? "none" : example.c_str());
  return report(10, "heatmap peaks at an adjacent offset", ok, t, detail);
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  bool setup = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--setup") == 0) setup = true;
    else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      criterion = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--data-dir") == 0 && i + 1 < argc)
      g_dir = argv[++i];
    else {
      std::fprintf(stderr,
                   "usage: penn_acceptance [--setup] [--criterion N] "
                   "[--data-dir DIR]\n");
      return 2;
    }
  }

  setup_data();
  if (setup) {
    std::printf("acceptance data ready in %s\n", g_dir.c_str());
    return 0;
  }

  bool (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                          criterion5, criterion6, criterion7, criterion8,
                          criterion9, criterion10};
  bool all_ok = true;
  if (criterion > 0) {
    if (criterion > 10) {
      std::fprintf(stderr, "no criterion %d\n", criterion);
      return 2;
    }
    all_ok = criteria[criterion - 1]();
  } else {
    for (auto* fn : criteria) all_ok = fn() && all_ok;
  }
  return all_ok ? 0 : 1;
}
