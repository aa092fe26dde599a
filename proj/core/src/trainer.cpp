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

#include "penn/trainer.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

#include "penn/hash.hpp"
#include "penn/parallel.hpp"

namespace penn {

const char* to_string(Objective o) {
  switch (o) {
    case Objective::Cbow: return "cbow";
    case Objective::SkipGram: return "sg";
    case Objective::Clow: return "clow";
    case Objective::PennSkipGram: return "pennsg";
  }
  return "?";
}

Objective objective_from_string(const std::string& s) {
  if (s == "cbow") return Objective::Cbow;
  if (s == "sg") return Objective::SkipGram;
  if (s == "clow") return Objective::Clow;
  if (s == "pennsg") return Objective::PennSkipGram;
  throw ParamError("unknown objective: " + s);
}

void TrainConfig::validate() const {
  effective_layout().validate();
  if (negatives < 1) throw ParamError("negatives must be >= 1");
  if (epochs < 1) throw ParamError("epochs must be >= 1");
  if (threads < 1) throw ParamError("threads must be >= 1");
  if (subsample_t < 0) throw ParamError("subsample threshold must be >= 0");
  if (lr0 < 0) throw ParamError("lr0 must be > 0");
  if (negative_alpha <= 0) throw ParamError("negative-table alpha must be > 0");
}

std::uint64_t config_fingerprint(const TrainConfig& cfg) {
  const PartitionLayout layout = cfg.effective_layout();
  char buf[512];
  int n = std::snprintf(
      buf, sizeof(buf),
      "alpha=%.17g\ndynamic_window=%d\nepochs=%d\nlr0=%.17g\nnegatives=%d\n"
      "objective=%s\nclassifier_partitions=%d\npartition_dim=%d\nreduce=%s\n"
      "sigmoid=%s\nstyle=%s\nsubsample=%.17g\ntable_size=%llu\nwindow=%d\n",
      cfg.negative_alpha, cfg.effective_dynamic_window() ? 1 : 0, cfg.epochs,
      cfg.effective_lr0(), cfg.negatives, to_string(cfg.objective),
      layout.classifier_partition_count(), layout.partition_dim,
      to_string(layout.reduce), to_string(cfg.sigmoid_mode),
      to_string(layout.style), cfg.subsample_t,
      static_cast<unsigned long long>(cfg.table_size), layout.window);
  return fnv1a(buf, static_cast<std::size_t>(n));
}

namespace {

struct SegmentTracker {
  std::uint64_t first_bound = 0;  // tokens: [0, first_bound) -> first segment
  std::uint64_t last_start = 0;   // tokens >= last_start -> last segment
  double first_sum = 0, last_sum = 0;
  std::uint64_t first_steps = 0, last_steps = 0;
};

struct WorkerShared {
  std::atomic<std::uint64_t> tokens{0};
  std::uint64_t total_scheduled = 0;
  std::int64_t log_every = 0;
  std::chrono::steady_clock::time_point start_time;
};

struct WorkerResult {
  double loss_sum = 0;
  std::uint64_t steps = 0;
  SegmentTracker seg;
};

struct ShardTarget {
  std::int32_t offset = 0;
  std::int32_t embedding_partition = 0;
  std::vector<float>* syn0 = nullptr;
  std::vector<float>* syn1 = nullptr;
};

void run_worker(const EncodedCorpus& corpus, const Vocabulary& vocab,
                const TrainConfig& cfg, const PartitionLayout& layout,
                const NegativeTable& table, const Sigmoid& sig,
                const std::vector<float>& keep_prob, EmbeddingStore* store,
                const ShardTarget* shard, std::size_t sent_begin,
                std::size_t sent_end, int worker_id, WorkerShared& shared,
                WorkerResult& result) {
  const std::int32_t window = layout.window;
  const std::int32_t k = cfg.negatives;
  const double lr0 = cfg.effective_lr0();
  const bool dynamic = cfg.effective_dynamic_window();
  const bool subsample = cfg.subsample_t > 0;
  const std::int32_t pdim = layout.partition_dim;

  const std::uint64_t wseed = derive_seed(cfg.seed, stream::kWorker,
                                          static_cast<std::uint64_t>(worker_id));
  Rng sub_rng(derive_seed(wseed, stream::kSubsample));
  Rng win_rng(derive_seed(wseed, stream::kWindow));
  std::vector<NegativeSampler> negs;
  if (cfg.objective == Objective::PennSkipGram) {
    for (std::int32_t p = 0; p < layout.embedding_partition_count(); ++p)
      negs.emplace_back(table, derive_seed(wseed, stream::kNegative,
                                           static_cast<std::uint64_t>(p)));
  } else {
    negs.emplace_back(table, derive_seed(wseed, stream::kNegative, 0));
  }

  Workspace<float> ws;
  std::vector<std::int32_t> sen;
  std::vector<std::int32_t> ctx_ids;
  std::vector<ContextItem> ctx_items;
  sen.reserve(EncodedCorpus::kMaxSentence);

  double log_loss = 0;
  std::uint64_t log_steps = 0;

  for (std::int32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t s = sent_begin; s < sent_end; ++s) {
      const auto [beg, end] = corpus.sentence(s);
      const std::uint64_t len = end - beg;
      const std::uint64_t base =
          shared.tokens.fetch_add(len, std::memory_order_relaxed);
      double lr = lr0 * (1.0 - static_cast<double>(base) /
                                   static_cast<double>(shared.total_scheduled));
      if (lr < lr0 * 1e-4) lr = lr0 * 1e-4;

      sen.clear();
      for (std::uint64_t i = beg; i < end; ++i) {
        const std::int32_t id = corpus.ids[i];
        if (subsample && sub_rng.uniform01() >= keep_prob[id]) continue;
        sen.push_back(id);
      }
      const auto n = static_cast<std::int32_t>(sen.size());

      double sent_loss = 0;
      std::uint64_t sent_steps = 0;
      for (std::int32_t f = 0; f < n; ++f) {
        const std::int32_t cw =
            dynamic ? 1 + static_cast<std::int32_t>(win_rng.uniform_below(
                              static_cast<std::uint64_t>(window)))
                    : window;
        switch (cfg.objective) {
          case Objective::Cbow: {
            ctx_ids.clear();
            for (std::int32_t j = -cw; j <= cw; ++j) {
              const std::int32_t p = f + j;
              if (j == 0 || p < 0 || p >= n) continue;
              ctx_ids.push_back(sen[p]);
            }
            if (ctx_ids.empty()) break;
            sent_loss += step_cbow(*store, std::span<const std::int32_t>(ctx_ids),
                                   sen[f], k, lr, negs[0], sig, ws);
            ++sent_steps;
            break;
          }
          case Objective::SkipGram: {
            for (std::int32_t j = -cw; j <= cw; ++j) {
              const std::int32_t p = f + j;
              if (j == 0 || p < 0 || p >= n) continue;
              sent_loss += step_sg(*store, sen[f], sen[p], k, lr, negs[0], sig, ws);
              ++sent_steps;
            }
            break;
          }
          case Objective::Clow: {
            ctx_items.clear();
            for (std::int32_t j = -cw; j <= cw; ++j) {
              const std::int32_t p = f + j;
              if (j == 0 || p < 0 || p >= n) continue;
              ctx_items.push_back({sen[p], j});
            }
            if (ctx_items.empty()) break;
            sent_loss += step_clow(*store, std::span<const ContextItem>(ctx_items),
                                   sen[f], k, lr, negs[0], sig, ws);
            ++sent_steps;
            break;
          }
          case Objective::PennSkipGram: {
            for (std::int32_t j = -cw; j <= cw; ++j) {
              const std::int32_t p = f + j;
              if (j == 0 || p < 0 || p >= n) continue;
              const OffsetTarget at = partition_of(layout, j);
              if (shard != nullptr) {
                if (j != shard->offset) continue;
                float* input =
                    shard->syn0->data() +
                    static_cast<std::size_t>(sen[p]) * pdim;
                sent_loss += detail::penn_sg_kernel(
                    input, shard->syn1->data(), static_cast<std::size_t>(pdim),
                    static_cast<std::size_t>(pdim), sen[f], k, lr,
                    negs[at.embedding], sig, ws);
              } else {
                sent_loss += step_penn_sg(*store, sen[f], sen[p], j, k, lr,
                                          negs[at.embedding], sig, ws);
              }
              ++sent_steps;
            }
            break;
          }
        }
      }

      result.loss_sum += sent_loss;
      result.steps += sent_steps;
      if (base < result.seg.first_bound) {
        result.seg.first_sum += sent_loss;
        result.seg.first_steps += sent_steps;
      }
      if (base >= result.seg.last_start) {
        result.seg.last_sum += sent_loss;
        result.seg.last_steps += sent_steps;
      }

      if (shared.log_every > 0) {
        log_loss += sent_loss;
        log_steps += sent_steps;
        const auto every = static_cast<std::uint64_t>(shared.log_every);
        if ((base + len) / every != base / every) {
          const double secs =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            shared.start_time)
                  .count();
          const double done = static_cast<double>(base + len);
          std::fprintf(stderr,
                       "penn: %5.1f%%  lr %.6f  %.0fk tokens/s  mean loss %.4f\n",
                       100.0 * done / static_cast<double>(shared.total_scheduled),
                       lr, done / secs / 1000.0,
                       log_steps ? log_loss / static_cast<double>(log_steps) : 0.0);
          log_loss = 0;
          log_steps = 0;
        }
      }
    }
  }
}

struct TrainOutcome {
  TrainStats stats;
};

TrainOutcome run_training(const EncodedCorpus& corpus, const Vocabulary& vocab,
                          const TrainConfig& cfg, const PartitionLayout& layout,
                          EmbeddingStore* store, const ShardTarget* shard) {
  cfg.validate();
  if (vocab.size() < 1) throw Error("empty vocabulary");
  if (corpus.token_count() == 0) throw Error("empty corpus");

  const NegativeTable table(vocab, cfg.negative_alpha, cfg.table_size);
  const Sigmoid sig(cfg.sigmoid_mode);

  std::vector<float> keep_prob;
  if (cfg.subsample_t > 0) {
    keep_prob.resize(static_cast<std::size_t>(vocab.size()));
    for (std::int32_t i = 0; i < vocab.size(); ++i)
      keep_prob[static_cast<std::size_t>(i)] = static_cast<float>(
          subsample_keep_probability(vocab, i, cfg.subsample_t));
  }

  WorkerShared shared;
  shared.total_scheduled =
      static_cast<std::uint64_t>(cfg.epochs) * corpus.token_count();
  shared.log_every = cfg.log_every;
  shared.start_time = std::chrono::steady_clock::now();

  const std::size_t sentences = corpus.sentence_count();
  const auto nworkers =
      static_cast<std::size_t>(std::min<std::int64_t>(cfg.threads,
                                                      std::max<std::int64_t>(1,
                                                          static_cast<std::int64_t>(sentences))));
  std::vector<WorkerResult> results(nworkers);
  for (auto& r : results) {
    r.seg.first_bound = std::max<std::uint64_t>(shared.total_scheduled / 100, 1);
    r.seg.last_start = shared.total_scheduled -
                       std::min(shared.total_scheduled,
                                std::max<std::uint64_t>(shared.total_scheduled / 10, 1));
  }

  if (nworkers == 1) {
    run_worker(corpus, vocab, cfg, layout, table, sig, keep_prob, store, shard,
               0, sentences, 0, shared, results[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) {
      const std::size_t begin = sentences * w / nworkers;
      const std::size_t end = sentences * (w + 1) / nworkers;
      threads.emplace_back([&, w, begin, end] {
        run_worker(corpus, vocab, cfg, layout, table, sig, keep_prob, store,
                   shard, begin, end, static_cast<int>(w), shared, results[w]);
      });
    }
    for (auto& t : threads) t.join();
  }

  TrainOutcome out;
  SegmentTracker seg;
  for (const auto& r : results) {
    out.stats.loss_sum += r.loss_sum;
    out.stats.steps += r.steps;
    seg.first_sum += r.seg.first_sum;
    seg.first_steps += r.seg.first_steps;
    seg.last_sum += r.seg.last_sum;
    seg.last_steps += r.seg.last_steps;
  }
  out.stats.scheduled_tokens = shared.total_scheduled;
  out.stats.mean_loss =
      out.stats.steps ? out.stats.loss_sum / static_cast<double>(out.stats.steps) : 0;
  out.stats.first_segment_mean =
      seg.first_steps ? seg.first_sum / static_cast<double>(seg.first_steps) : 0;
  out.stats.last_segment_mean =
      seg.last_steps ? seg.last_sum / static_cast<double>(seg.last_steps) : 0;
  return out;
}

}  // namespace

Model train(const EncodedCorpus& corpus, const Vocabulary& vocab,
            const TrainConfig& cfg, std::uint64_t corpus_hash,
            TrainStats* stats) {
  const PartitionLayout layout = cfg.effective_layout();
  Model model;
  model.vocab = vocab;
  model.store = EmbeddingStore(layout, vocab.size());
  model.store.init_weights(cfg.seed);
  TrainOutcome out = run_training(corpus, vocab, cfg, layout, &model.store, nullptr);
  if (stats) *stats = out.stats;
  model.prov = {corpus_hash, config_fingerprint(cfg), cfg.seed};
  return model;
}

Shard train_shard(const EncodedCorpus& corpus, const Vocabulary& vocab,
                  const TrainConfig& cfg, std::int32_t offset,
                  std::uint64_t corpus_hash, TrainStats* stats) {
  if (cfg.objective != Objective::PennSkipGram)
    throw ParamError("shard training requires objective=pennsg");
  const PartitionLayout layout = cfg.effective_layout();
  if (layout.style != Style::Windowed)
    throw ParamError("shard training requires style=windowed");
  if (layout.grouped())
    throw ParamError("shard training requires ungrouped classifier partitions");
  const OffsetTarget at = partition_of(layout, offset);  // validates offset

  Shard shard;
  shard.offset = offset;
  shard.layout = layout;
  shard.vocab = vocab;
  const auto rows = static_cast<std::size_t>(vocab.size());
  const auto pdim = static_cast<std::size_t>(layout.partition_dim);
  shard.syn0.assign(rows * pdim, 0.0f);
  shard.syn1.assign(rows * pdim, 0.0f);

  // Initial slice identical to the matching partition of a full-model init.
  const std::int32_t parts = layout.embedding_partition_count();
  const double inv_d = 1.0 / static_cast<double>(layout.embedding_dim());
  for (std::size_t r = 0; r < rows; ++r) {
    Rng rng(derive_seed(cfg.seed, stream::kInit,
                        static_cast<std::uint64_t>(r) * parts + at.embedding));
    for (std::size_t d = 0; d < pdim; ++d)
      shard.syn0[r * pdim + d] = static_cast<float>((rng.uniform01() - 0.5) * inv_d);
  }

  ShardTarget target{offset, at.embedding, &shard.syn0, &shard.syn1};
  TrainOutcome out = run_training(corpus, vocab, cfg, layout, nullptr, &target);
  if (stats) *stats = out.stats;
  shard.prov = {corpus_hash, config_fingerprint(cfg), cfg.seed};
  return shard;
}

}  // namespace penn
