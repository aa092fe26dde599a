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

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "penn/corpus.hpp"
#include "penn/model_io.hpp"
#include "penn/sigmoid.hpp"
#include "penn/store.hpp"

namespace penn {

enum class Objective : std::uint32_t { Cbow = 0, SkipGram = 1, Clow = 2, PennSkipGram = 3 };

const char* to_string(Objective o);
Objective objective_from_string(const std::string& s);

struct TrainConfig {
  Objective objective = Objective::Cbow;
  PartitionLayout layout;  // for baselines only window and partition_dim apply
  std::int32_t negatives = 5;  // k
  double lr0 = 0;              // 0 = objective default (0.05 cbow/clow, 0.025 sg/pennsg)
  std::int32_t epochs = 5;
  double subsample_t = 1e-5;  // 0 disables subsampling
  std::uint64_t seed = 1;
  // Default: on for the baselines, off for the PENN styles (shrinkage changes
  // which partitions train).
  std::optional<bool> dynamic_window;
  std::int32_t threads = 1;
  double negative_alpha = NegativeTable::kDefaultAlpha;
  std::uint64_t table_size = NegativeTable::kDefaultSize;
  Sigmoid::Mode sigmoid_mode = Sigmoid::Mode::Table;
  std::int64_t log_every = 1'000'000;  // tokens between progress lines; 0 = silent

  bool is_baseline() const {
    return objective == Objective::Cbow || objective == Objective::SkipGram;
  }
  double effective_lr0() const {
    if (lr0 > 0) return lr0;
    return (objective == Objective::Cbow || objective == Objective::Clow)
               ? 0.05
               : 0.025;
  }
  bool effective_dynamic_window() const {
    return dynamic_window.value_or(is_baseline());
  }
  // Baselines store a single flat partition of width partition_dim.
  PartitionLayout effective_layout() const {
    if (!is_baseline()) return layout;
    PartitionLayout flat = layout;
    flat.style = Style::Flat;
    flat.classifier_partitions = 0;
    return flat;
  }
  void validate() const;
};

// Canonical fingerprint of everything that shapes the trained weights
// (objective, layout, schedule, sampling parameters, sigmoid mode). Seed and
// corpus are tracked separately in ModelProvenance.
std::uint64_t config_fingerprint(const TrainConfig& cfg);

struct ContextItem {
  std::int32_t id;
  std::int32_t offset;  // signed window position relative to the focus
};

// Scratch buffers reused across step calls by one worker.
template <typename T>
struct Workspace {
  std::vector<T> hidden;
  std::vector<T> err;
  std::vector<std::int32_t> targets;
  std::vector<double> grads;
  std::vector<std::int32_t> part_count;
  std::vector<std::int32_t> used_parts;
};

namespace detail {

inline double nll_term(bool positive, double sigma) {
  double p = positive ? sigma : 1.0 - sigma;
  return -std::log(p > 1e-300 ? p : 1e-300);
}

// Shared tail of every step: score the positive target and k negatives
// against a fixed hidden vector restricted to `parts` classifier partitions,
// then apply the syn1 updates. All logits are computed against the pre-step
// weights, so the applied updates are the exact gradient of the sampled
// negative-log-likelihood at the step start. Returns the loss; ws.err holds
// the accumulated error vector (same slicing as hidden) for the caller to
// propagate into syn0.
template <typename T, typename NegDraw>
double score_targets(EmbeddingStoreT<T>& store, std::span<const T> hidden,
                     std::span<const std::int32_t> parts, std::int32_t focus,
                     std::int32_t k, double lr, NegDraw&& draw,
                     const Sigmoid& sig, Workspace<T>& ws) {
  const std::int32_t dim = store.partition_dim();
  ws.err.assign(hidden.size(), T(0));
  ws.targets.clear();
  ws.grads.clear();
  double loss = 0;
  for (std::int32_t t = 0; t <= k; ++t) {
    const bool positive = t == 0;
    const std::int32_t target = positive ? focus : draw(focus);
    T s = 0;
    for (std::int32_t p : parts) {
      auto out = store.syn1_part(target, p);
      const T* h = hidden.data() + static_cast<std::size_t>(p) * dim;
      for (std::int32_t i = 0; i < dim; ++i) s += h[i] * out[i];
    }
    const double sigma = sig.value(static_cast<double>(s));
    loss += nll_term(positive, sigma);
    const double g = lr * ((positive ? 1.0 : 0.0) - sigma);
    for (std::int32_t p : parts) {
      auto out = store.syn1_part(target, p);
      T* e = ws.err.data() + static_cast<std::size_t>(p) * dim;
      for (std::int32_t i = 0; i < dim; ++i)
        e[i] += static_cast<T>(g) * out[i];
    }
    ws.targets.push_back(target);
    ws.grads.push_back(g);
  }
  for (std::size_t t = 0; t < ws.targets.size(); ++t) {
    const T g = static_cast<T>(ws.grads[t]);
    for (std::int32_t p : parts) {
      auto out = store.syn1_part(ws.targets[t], p);
      const T* h = hidden.data() + static_cast<std::size_t>(p) * dim;
      for (std::int32_t i = 0; i < dim; ++i) out[i] += g * h[i];
    }
  }
  return loss;
}

}  // namespace detail

// Baseline CBOW step: hidden = average of the full syn0 rows of the context;
// the error vector is applied to each context row scaled by 1/|context|.
// Empty context is a no-op returning 0 loss.
template <typename T, typename NegDraw>
double step_cbow(EmbeddingStoreT<T>& store,
                 std::span<const std::int32_t> context, std::int32_t focus,
                 std::int32_t k, double lr, NegDraw&& draw, const Sigmoid& sig,
                 Workspace<T>& ws) {
  if (context.empty()) return 0.0;
  if (store.classifier_dim() != store.embedding_dim())
    throw ParamError("step_cbow requires an ungrouped layout");
  const auto dim = static_cast<std::size_t>(store.classifier_dim());
  ws.hidden.assign(dim, T(0));
  for (std::int32_t c : context) {
    auto row = store.syn0_row(c);
    for (std::size_t i = 0; i < dim; ++i) ws.hidden[i] += row[i];
  }
  const T inv_n = T(1) / static_cast<T>(context.size());
  for (std::size_t i = 0; i < dim; ++i) ws.hidden[i] *= inv_n;

  ws.used_parts.clear();
  for (std::int32_t p = 0; p < store.layout().classifier_partition_count(); ++p)
    ws.used_parts.push_back(p);
  double loss = detail::score_targets(store, std::span<const T>(ws.hidden),
                                      ws.used_parts, focus, k, lr, draw, sig, ws);
  for (std::int32_t c : context) {
    auto row = store.syn0_row(c);
    for (std::size_t i = 0; i < dim; ++i) row[i] += ws.err[i] * inv_n;
  }
  return loss;
}

// Baseline skip-gram step: hidden = syn0[context_word], targets = focus plus
// k negatives.
template <typename T, typename NegDraw>
double step_sg(EmbeddingStoreT<T>& store, std::int32_t focus,
               std::int32_t context_word, std::int32_t k, double lr,
               NegDraw&& draw, const Sigmoid& sig, Workspace<T>& ws) {
  if (store.classifier_dim() != store.embedding_dim())
    throw ParamError("step_sg requires an ungrouped layout");
  const auto dim = static_cast<std::size_t>(store.embedding_dim());
  auto row = store.syn0_row(context_word);
  ws.used_parts.clear();
  for (std::int32_t p = 0; p < store.layout().classifier_partition_count(); ++p)
    ws.used_parts.push_back(p);
  double loss = detail::score_targets(store, std::span<const T>(row),
                                      ws.used_parts, focus, k, lr, draw, sig, ws);
  for (std::size_t i = 0; i < dim; ++i) row[i] += ws.err[i];
  return loss;
}

// CLOW step: each context word contributes its location-specific partition to
// the hidden vector slice of its classifier partition (averaged or summed when
// several words share one); gradients flow only through the slices used.
template <typename T, typename NegDraw>
double step_clow(EmbeddingStoreT<T>& store, std::span<const ContextItem> context,
                 std::int32_t focus, std::int32_t k, double lr, NegDraw&& draw,
                 const Sigmoid& sig, Workspace<T>& ws) {
  if (context.empty()) return 0.0;
  const PartitionLayout& layout = store.layout();
  const std::int32_t dim = layout.partition_dim;
  const std::int32_t cls = layout.classifier_partition_count();
  ws.hidden.assign(static_cast<std::size_t>(store.classifier_dim()), T(0));
  ws.part_count.assign(cls, 0);
  ws.used_parts.clear();
  for (const ContextItem& item : context) {
    const OffsetTarget at = partition_of(layout, item.offset);
    auto src = store.syn0_part(item.id, at.embedding);
    T* dst = ws.hidden.data() + static_cast<std::size_t>(at.classifier) * dim;
    for (std::int32_t i = 0; i < dim; ++i) dst[i] += src[i];
    if (ws.part_count[at.classifier]++ == 0)
      ws.used_parts.push_back(at.classifier);
  }
  if (layout.reduce == GroupReduce::Average) {
    for (std::int32_t p : ws.used_parts) {
      if (ws.part_count[p] < 2) continue;
      const T inv = T(1) / static_cast<T>(ws.part_count[p]);
      T* dst = ws.hidden.data() + static_cast<std::size_t>(p) * dim;
      for (std::int32_t i = 0; i < dim; ++i) dst[i] *= inv;
    }
  }

  double loss = detail::score_targets(store, std::span<const T>(ws.hidden),
                                      ws.used_parts, focus, k, lr, draw, sig, ws);
  for (const ContextItem& item : context) {
    const OffsetTarget at = partition_of(layout, item.offset);
    auto dst = store.syn0_part(item.id, at.embedding);
    const T* e = ws.err.data() + static_cast<std::size_t>(at.classifier) * dim;
    const T w = layout.reduce == GroupReduce::Average
                    ? T(1) / static_cast<T>(ws.part_count[at.classifier])
                    : T(1);
    for (std::int32_t i = 0; i < dim; ++i) dst[i] += w * e[i];
  }
  return loss;
}

namespace detail {

// PENN skip-gram core over raw slices, shared by the full-store step and the
// compact per-offset shard trainer. Both call the very same instantiation
// (plain pointers plus a row stride), so a shard run performs literally the
// same float operations as the matching partition of a single-process run.
// syn1_slice of row r starts at syn1_base + r * syn1_stride.
template <typename T, typename NegDraw>
double penn_sg_kernel(T* input_slice, T* syn1_base, std::size_t syn1_stride,
                      std::size_t dim, std::int32_t focus, std::int32_t k,
                      double lr, NegDraw&& draw, const Sigmoid& sig,
                      Workspace<T>& ws) {
  ws.err.assign(dim, T(0));
  ws.targets.clear();
  ws.grads.clear();
  double loss = 0;
  for (std::int32_t t = 0; t <= k; ++t) {
    const bool positive = t == 0;
    const std::int32_t target = positive ? focus : draw(focus);
    const T* out = syn1_base + static_cast<std::size_t>(target) * syn1_stride;
    T s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += input_slice[i] * out[i];
    const double sigma = sig.value(static_cast<double>(s));
    loss += nll_term(positive, sigma);
    const double g = lr * ((positive ? 1.0 : 0.0) - sigma);
    for (std::size_t i = 0; i < dim; ++i)
      ws.err[i] += static_cast<T>(g) * out[i];
    ws.targets.push_back(target);
    ws.grads.push_back(g);
  }
  for (std::size_t t = 0; t < ws.targets.size(); ++t) {
    T* out = syn1_base + static_cast<std::size_t>(ws.targets[t]) * syn1_stride;
    const T g = static_cast<T>(ws.grads[t]);
    for (std::size_t i = 0; i < dim; ++i) out[i] += g * input_slice[i];
  }
  for (std::size_t i = 0; i < dim; ++i) input_slice[i] += ws.err[i];
  return loss;
}

}  // namespace detail

// PENN skip-gram step: trains the (embedding partition, classifier partition)
// pair selected by the window offset in isolation; nothing else is touched.
template <typename T, typename NegDraw>
double step_penn_sg(EmbeddingStoreT<T>& store, std::int32_t focus,
                    std::int32_t context_word, std::int32_t offset,
                    std::int32_t k, double lr, NegDraw&& draw,
                    const Sigmoid& sig, Workspace<T>& ws) {
  const OffsetTarget at = partition_of(store.layout(), offset);
  auto input = store.syn0_part(context_word, at.embedding);
  T* syn1_base = store.syn1().data() +
                 static_cast<std::size_t>(at.classifier) * store.partition_dim();
  return detail::penn_sg_kernel(
      input.data(), syn1_base, static_cast<std::size_t>(store.classifier_dim()),
      input.size(), focus, k, lr, draw, sig, ws);
}

// Production negative sampler: draws from the smoothed unigram table,
// redrawing (bounded) when the sample collides with the positive target.
class NegativeSampler {
 public:
  NegativeSampler(const NegativeTable& table, std::uint64_t seed)
      : table_(&table), rng_(seed) {}

  std::int32_t operator()(std::int32_t positive) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      std::int32_t id = table_->sample(rng_);
      if (id != positive) return id;
    }
    return table_->sample(rng_);
  }

 private:
  const NegativeTable* table_;
  Rng rng_;
};

struct TrainStats {
  std::uint64_t steps = 0;
  std::uint64_t scheduled_tokens = 0;
  double loss_sum = 0;
  double mean_loss = 0;
  double first_segment_mean = 0;  // mean loss over the first 1% of steps
  double last_segment_mean = 0;   // mean loss over the final 10% of steps
};

// Runs the configured objective over the corpus: epochs passes with
// subsampling, optional dynamic windows, per-sentence linear lr decay with an
// lr0*1e-4 floor. Deterministic when threads == 1. corpus_hash is recorded in
// the returned provenance.
Model train(const EncodedCorpus& corpus, const Vocabulary& vocab,
            const TrainConfig& cfg, std::uint64_t corpus_hash = 0,
            TrainStats* stats = nullptr);

}  // namespace penn
