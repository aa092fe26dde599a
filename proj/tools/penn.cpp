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

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "penn/datagen.hpp"
#include "penn/diem.hpp"
#include "penn/eval.hpp"
#include "penn/hash.hpp"
#include "penn/kvconfig.hpp"
#include "penn/parallel.hpp"
#include "penn/trainer.hpp"

namespace {

using namespace penn;

constexpr const char* kVersion = "penn 0.1.0 (model format v1)";

// Flags shared by train, shard-train and train-chars.
struct TrainArgs {
  std::string config_path;
  std::string input;
  std::string output;
  std::string objective = "cbow";
  std::string style = "windowed";
  std::string reduce = "average";
  std::string sigmoid = "table";
  std::string dynamic_window = "auto";
  std::string save_vocab;
  std::string read_vocab;
  std::string export_text_path;
  std::int32_t window = 5;
  std::int32_t partition_dim = 100;
  std::int32_t classifier_partitions = 0;
  std::int32_t negatives = 5;
  std::int32_t epochs = 5;
  std::int32_t threads = 1;
  std::uint64_t min_count = 5;
  std::uint64_t seed = 1;
  std::uint64_t table_size = NegativeTable::kDefaultSize;
  double subsample = 1e-5;
  double lr0 = 0;
  double unigram_power = NegativeTable::kDefaultAlpha;
};

void add_train_flags(CLI::App* cmd, TrainArgs& args, bool with_objective) {
  cmd->add_option("--input", args.input, "training corpus (UTF-8 text)")
      ->required();
  cmd->add_option("--output", args.output, "output model file")->required();
  if (with_objective) {
    cmd->add_option("--objective", args.objective,
                    "training objective: cbow, sg, clow, pennsg")
        ->check(CLI::IsMember({"cbow", "sg", "clow", "pennsg"}));
    cmd->add_option("--style", args.style,
                    "partition style for PENN objectives: windowed, directional")
        ->check(CLI::IsMember({"windowed", "directional"}));
  }
  cmd->add_option("--window", args.window, "context window c");
  cmd->add_option("--partition-dim", args.partition_dim,
                  "partition width P (full vector size for the baselines)");
  cmd->add_option("--classifier-partitions", args.classifier_partitions,
                  "classifier partition count (0 = one per embedding partition)");
  cmd->add_option("--reduce", args.reduce,
                  "grouped-input combination: average or sum")
      ->check(CLI::IsMember({"average", "avg", "sum"}));
  cmd->add_option("--negative", args.negatives, "negative samples per target");
  cmd->add_option("--epochs", args.epochs, "training epochs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", args.threads,
                  "worker threads (1 = deterministic)");
  cmd->add_option("--seed", args.seed, "RNG seed");
  cmd->add_option("--subsample", args.subsample,
                  "frequent-word subsampling threshold t (0 disables)");
  cmd->add_option("--min-count", args.min_count, "minimum token count");
  cmd->add_option("--lr0", args.lr0,
                  "initial learning rate (0 = objective default)");
  cmd->add_option("--unigram-power", args.unigram_power,
                  "negative-table smoothing exponent");
  cmd->add_option("--table-size", args.table_size, "negative table cells");
  cmd->add_option("--sigmoid", args.sigmoid, "sigmoid mode: table or exact")
      ->check(CLI::IsMember({"table", "exact"}));
  cmd->add_option("--dynamic-window", args.dynamic_window,
                  "dynamic window shrinking: auto, on, off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  cmd->add_option("--save-vocab", args.save_vocab, "write the vocabulary here");
  cmd->add_option("--read-vocab", args.read_vocab,
                  "load the vocabulary instead of counting the corpus");
  cmd->add_option("--export-text", args.export_text_path,
                  "also export syn0 in the text vector format");
  cmd->add_option("--config", args.config_path,
                  "flat key = value config file; command-line flags win");
}

// Values from --config fill any option the command line left untouched.
void apply_config_defaults(const CLI::App* cmd, TrainArgs& args) {
  if (args.config_path.empty()) return;
  KvConfig cfg = KvConfig::parse_file(args.config_path);
  auto fresh = [&](const char* flag) { return cmd->count(flag) == 0; };
  auto str = [&](const char* key, const char* flag, std::string& field) {
    if (auto v = cfg.get("", key); v && fresh(flag)) field = *v;
  };
  auto i32 = [&](const char* key, const char* flag, std::int32_t& field) {
    if (auto v = cfg.get("", key); v && fresh(flag)) field = std::stoi(*v);
  };
  auto u64 = [&](const char* key, const char* flag, std::uint64_t& field) {
    if (auto v = cfg.get("", key); v && fresh(flag)) field = std::stoull(*v);
  };
  auto f64 = [&](const char* key, const char* flag, double& field) {
    if (auto v = cfg.get("", key); v && fresh(flag)) field = std::stod(*v);
  };
  str("input", "--input", args.input);
  str("output", "--output", args.output);
  str("objective", "--objective", args.objective);
  str("style", "--style", args.style);
  str("reduce", "--reduce", args.reduce);
  str("sigmoid", "--sigmoid", args.sigmoid);
  str("dynamic-window", "--dynamic-window", args.dynamic_window);
  str("save-vocab", "--save-vocab", args.save_vocab);
  str("read-vocab", "--read-vocab", args.read_vocab);
  str("export-text", "--export-text", args.export_text_path);
  i32("window", "--window", args.window);
  i32("partition-dim", "--partition-dim", args.partition_dim);
  i32("classifier-partitions", "--classifier-partitions",
      args.classifier_partitions);
  i32("negative", "--negative", args.negatives);
  i32("epochs", "--epochs", args.epochs);
  i32("threads", "--threads", args.threads);
  u64("min-count", "--min-count", args.min_count);
  u64("seed", "--seed", args.seed);
  u64("table-size", "--table-size", args.table_size);
  f64("subsample", "--subsample", args.subsample);
  f64("lr0", "--lr0", args.lr0);
  f64("unigram-power", "--unigram-power", args.unigram_power);
}

TrainConfig to_train_config(const TrainArgs& args) {
  TrainConfig cfg;
  cfg.objective = objective_from_string(args.objective);
  cfg.layout.style = style_from_string(args.style);
  cfg.layout.window = args.window;
  cfg.layout.partition_dim = args.partition_dim;
  cfg.layout.classifier_partitions = args.classifier_partitions;
  cfg.layout.reduce = reduce_from_string(args.reduce);
  cfg.negatives = args.negatives;
  cfg.epochs = args.epochs;
  cfg.threads = args.threads;
  cfg.seed = args.seed;
  cfg.subsample_t = args.subsample;
  cfg.lr0 = args.lr0;
  cfg.negative_alpha = args.unigram_power;
  cfg.table_size = args.table_size;
  cfg.sigmoid_mode =
      args.sigmoid == "exact" ? Sigmoid::Mode::Exact : Sigmoid::Mode::Table;
  if (args.dynamic_window != "auto")
    cfg.dynamic_window = args.dynamic_window == "on";
  return cfg;
}

struct LoadedCorpus {
  Vocabulary vocab;
  EncodedCorpus corpus;
  std::uint64_t hash;
};

LoadedCorpus load_corpus(const TrainArgs& args) {
  LoadedCorpus out;
  out.hash = fnv1a_file(args.input);
  TokenStream stream = TokenStream::from_file(args.input);
  if (!args.read_vocab.empty()) {
    out.vocab = Vocabulary::load(args.read_vocab);
  } else {
    std::fprintf(stderr, "penn: building vocabulary from %s\n",
                 args.input.c_str());
    out.vocab = Vocabulary::build(stream, args.min_count);
  }
  std::fprintf(stderr, "penn: vocabulary %d tokens, %llu total occurrences\n",
               out.vocab.size(),
               static_cast<unsigned long long>(out.vocab.total_tokens()));
  if (!args.save_vocab.empty()) out.vocab.save(args.save_vocab);
  out.corpus = EncodedCorpus::encode(stream, out.vocab);
  return out;
}

std::uint64_t table_size_for(const TrainConfig& cfg, const Vocabulary& vocab) {
  return std::max(cfg.table_size, static_cast<std::uint64_t>(vocab.size()));
}

int cmd_train(const TrainArgs& args) {
  TrainConfig cfg = to_train_config(args);
  cfg.validate();
  LoadedCorpus data = load_corpus(args);
  cfg.table_size = table_size_for(cfg, data.vocab);
  TrainStats stats;
  Model model = train(data.corpus, data.vocab, cfg, data.hash, &stats);
  save_model(model, args.output);
  std::fprintf(stderr, "penn: trained %llu steps, mean loss %.4f -> %s\n",
               static_cast<unsigned long long>(stats.steps), stats.mean_loss,
               args.output.c_str());
  if (!args.export_text_path.empty())
    export_text(model.vocab, model.store.syn0().data(),
                model.store.vocab_size(), model.store.embedding_dim(),
                args.export_text_path);
  return 0;
}

int cmd_shard_train(const TrainArgs& args, std::int32_t offset) {
  TrainArgs fixed = args;
  fixed.objective = "pennsg";
  fixed.style = "windowed";
  TrainConfig cfg = to_train_config(fixed);
  cfg.validate();
  LoadedCorpus data = load_corpus(fixed);
  cfg.table_size = table_size_for(cfg, data.vocab);
  TrainStats stats;
  Shard shard =
      train_shard(data.corpus, data.vocab, cfg, offset, data.hash, &stats);
  save_shard(shard, args.output);
  std::fprintf(
      stderr, "penn: shard offset %+d trained %llu steps, mean loss %.4f -> %s\n",
      offset, static_cast<unsigned long long>(stats.steps), stats.mean_loss,
      args.output.c_str());
  return 0;
}

int cmd_merge(const std::vector<std::string>& shard_paths,
              const std::string& out, bool force) {
  std::vector<Shard> shards;
  shards.reserve(shard_paths.size());
  for (const auto& p : shard_paths) shards.push_back(load_shard(p));
  Model model = merge_shards(shards, force);
  save_model(model, out);
  std::fprintf(stderr, "penn: merged %zu shards into %s (D = %lld)\n",
               shards.size(), out.c_str(),
               static_cast<long long>(model.store.embedding_dim()));
  return 0;
}

struct CharArgs {
  TrainArgs base;
  std::int32_t char_dim = CharModel::kDefaultCharDim;
  std::int32_t multiple = CharModel::kDefaultMultiple;
};

int cmd_train_chars(const CharArgs& args) {
  CharTrainOptions opt;
  opt.char_dim = args.char_dim;
  opt.multiple = args.multiple;
  opt.window = args.base.window;
  opt.min_count = args.base.min_count;
  opt.negatives = args.base.negatives;
  opt.epochs = args.base.epochs;
  opt.subsample_t = args.base.subsample;
  opt.seed = args.base.seed;
  opt.threads = args.base.threads;
  const std::uint64_t hash = fnv1a_file(args.base.input);
  CharModel model = train_char_embeddings(
      TokenStream::from_file(args.base.input, TokenStream::Mode::Character),
      opt, hash);
  model.save(args.base.output);
  std::fprintf(stderr,
               "penn: %d character vectors (dim %d, multiple %d) -> %s\n",
               model.char_vocab().size(), model.char_dim(), model.multiple(),
               args.base.output.c_str());
  if (!args.base.export_text_path.empty())
    export_text(model.char_vocab(), model.vectors().data(),
                model.char_vocab().size(), model.char_dim(),
                args.base.export_text_path);
  return 0;
}

int cmd_diem(const std::string& chars_path, const std::string& words_file,
             const std::string& vocab_model, const std::string& out,
             std::int32_t threads) {
  CharModel chars = CharModel::load(chars_path);
  Vocabulary vocab;
  if (!vocab_model.empty()) {
    vocab = load_model(vocab_model).vocab;
  } else {
    // One word per line (extra tokens on a line are ignored).
    std::vector<Vocabulary::Entry> entries;
    TokenStream::from_file(words_file)
        .scan([&](const std::vector<std::string_view>& s) {
          if (!s.empty()) entries.push_back({std::string(s[0]), 1});
        });
    if (entries.empty()) throw Error("no words in " + words_file);
    vocab = Vocabulary::from_entries(std::move(entries));
  }
  std::vector<float> rows = diem_vectors_for_vocab(vocab, chars, threads);
  export_text(vocab, rows.data(), vocab.size(), chars.output_dim(), out);
  std::fprintf(stderr, "penn: %d DIEM vectors of dim %lld -> %s\n",
               vocab.size(), static_cast<long long>(chars.output_dim()),
               out.c_str());
  return 0;
}

VectorSet vectors_from_model_file(const std::string& path) {
  Model m = load_model(path);
  return VectorSet::build(m.vocab, m.store.syn0().data(),
                          m.store.vocab_size(), m.store.embedding_dim());
}

struct EvalArgs {
  std::string model;
  std::string vectors;
  std::string diem;
  std::string ensemble;
  std::string analogies;
  std::string heatmap_out;
  std::string csv_out;
  std::int32_t threads = 1;
  bool ablation = false;
};

// Ensemble members from a config file: one [member.X] section per member
// with model=|vectors= plus optional space= and power=.
struct LoadedEnsemble {
  std::vector<VectorSet> storage;
  EnsembleSpec spec;
};

void finish_spec(LoadedEnsemble& ens, const std::vector<std::pair<bool, double>>& meta) {
  for (std::size_t i = 0; i < ens.storage.size(); ++i)
    ens.spec.members.push_back({&ens.storage[i], meta[i].first, meta[i].second});
}

LoadedEnsemble load_ensemble(const std::string& path) {
  LoadedEnsemble ens;
  KvConfig cfg = KvConfig::parse_file(path);
  if (auto v = cfg.get("", "top_k")) ens.spec.top_k = std::stoul(*v);
  if (auto v = cfg.get("", "diem_syntactic_only"))
    ens.spec.diem_syntactic_only = (*v == "true" || *v == "1");
  std::vector<std::pair<bool, double>> meta;
  for (const std::string& name : cfg.section_names()) {
    if (name.rfind("member", 0) != 0) continue;
    const auto* sec = cfg.section(name);
    std::string model_path, vectors_path, space = "word";
    double power = 1.0;
    for (const auto& [k, v] : sec->entries) {
      if (k == "model") model_path = v;
      else if (k == "vectors") vectors_path = v;
      else if (k == "space") space = v;
      else if (k == "power") power = std::stod(v);
    }
    if (model_path.empty() && vectors_path.empty())
      throw Error("ensemble member " + name + " has no model or vectors");
    ens.storage.push_back(model_path.empty()
                              ? VectorSet::from_text_file(vectors_path)
                              : vectors_from_model_file(model_path));
    meta.emplace_back(space == "diem", power);
  }
  if (ens.storage.empty()) throw Error("ensemble config has no members");
  finish_spec(ens, meta);
  return ens;
}

int cmd_eval(const EvalArgs& args) {
  AnalogyDataset dataset = AnalogyDataset::parse_file(args.analogies);
  EvalReport report;

  if (!args.ensemble.empty()) {
    LoadedEnsemble ens = load_ensemble(args.ensemble);
    report = ensemble_evaluate(ens.spec, dataset, args.threads);
  } else if (!args.diem.empty()) {
    // Squared word-model cosines plus raw DIEM cosines on syntactic queries.
    LoadedEnsemble ens;
    ens.storage.push_back(args.model.empty()
                              ? VectorSet::from_text_file(args.vectors)
                              : vectors_from_model_file(args.model));
    ens.storage.push_back(VectorSet::from_text_file(args.diem));
    finish_spec(ens, {{false, 2.0}, {true, 1.0}});
    report = ensemble_evaluate(ens.spec, dataset, args.threads);
  } else {
    VectorSet vs = args.model.empty() ? VectorSet::from_text_file(args.vectors)
                                      : vectors_from_model_file(args.model);
    report = evaluate(vs, dataset, args.threads);
  }

  std::fputs(report.table().c_str(), stdout);
  if (!args.csv_out.empty()) {
    std::ofstream out(args.csv_out);
    if (!out) throw Error("cannot open file for write: " + args.csv_out);
    out << report.csv();
  }

  if (!args.heatmap_out.empty()) {
    if (args.model.empty())
      throw Error("--heatmap needs --model (a windowed binary model)");
    Model m = load_model(args.model);
    HeatmapResult hm = partition_heatmap(m.vocab, m.store, dataset,
                                         args.threads, args.ablation);
    std::ofstream out(args.heatmap_out);
    if (!out) throw Error("cannot open file for write: " + args.heatmap_out);
    out << hm.csv();
    std::fprintf(stderr,
                 "penn: heatmap (%zu categories x %zu partitions) -> %s\n",
                 hm.row_names.size(), hm.col_offsets.size(),
                 args.heatmap_out.c_str());
  }
  return 0;
}

int cmd_query(const std::string& model, const std::string& vectors,
              const std::string& word, std::size_t k) {
  VectorSet vs = model.empty() ? VectorSet::from_text_file(vectors)
                               : vectors_from_model_file(model);
  for (const auto& [w, score] : nearest(vs, word, k))
    std::printf("%-24s %.6f\n", w.c_str(), score);
  return 0;
}

// Pipeline: train every member in the config (resumable via the recorded
// config hash), then ensemble-evaluate the whole set.
int cmd_pipeline(const std::string& config_path, const std::string& input,
                 const std::string& workdir, const std::string& analogies,
                 std::int32_t threads) {
  KvConfig cfg = KvConfig::parse_file(config_path);
  std::filesystem::create_directories(workdir);
  const std::uint64_t corpus_hash = fnv1a_file(input);
  const std::uint64_t min_count =
      cfg.get("", "min_count") ? std::stoull(*cfg.get("", "min_count")) : 5;

  LoadedEnsemble ens;
  std::vector<std::pair<bool, double>> meta;
  Vocabulary word_vocab;
  EncodedCorpus encoded;
  bool corpus_loaded = false;
  auto ensure_corpus = [&] {
    if (corpus_loaded) return;
    TokenStream stream = TokenStream::from_file(input);
    word_vocab = Vocabulary::build(stream, min_count);
    encoded = EncodedCorpus::encode(stream, word_vocab);
    corpus_loaded = true;
  };
  auto ensure_vocab = [&] {
    if (!corpus_loaded)
      word_vocab = Vocabulary::build(TokenStream::from_file(input), min_count);
  };

  for (const std::string& name : cfg.section_names()) {
    if (name.rfind("member", 0) != 0) continue;
    const auto* sec = cfg.section(name);
    auto get = [&](const char* key, const std::string& dflt) {
      for (const auto& [k, v] : sec->entries)
        if (k == key) return v;
      return dflt;
    };
    const std::string objective = get("objective", "clow");
    const double power = std::stod(get("power", "1"));
    const auto dot_pos = name.find('.');
    const std::string tag =
        dot_pos == std::string::npos ? name : name.substr(dot_pos + 1);

    try {
      if (objective == "diem") {
        CharTrainOptions opt;
        opt.char_dim = std::stoi(get("char_dim", "32"));
        opt.multiple = std::stoi(get("multiple", "10"));
        opt.window = std::stoi(get("window", "3"));
        opt.min_count = std::stoull(get("char_min_count", "25"));
        opt.epochs = std::stoi(get("epochs", "1"));
        opt.seed = std::stoull(get("seed", "1"));
        opt.threads = threads;
        const std::string path = workdir + "/" + tag + ".chars";
        KvConfig member;
        for (const auto& [k, v] : sec->entries) member.set("", k, v);
        const std::uint64_t want = member.fingerprint();
        CharModel chars;
        bool reuse = false;
        if (std::filesystem::exists(path)) {
          try {
            chars = CharModel::load(path);
            reuse = chars.prov().config_hash == want &&
                    chars.prov().corpus_hash == corpus_hash;
          } catch (const Error&) {
            reuse = false;
          }
        }
        if (reuse) {
          std::fprintf(stderr, "penn: [%s] skipping (config hash matches)\n",
                       tag.c_str());
        } else {
          std::fprintf(stderr, "penn: [%s] training character model\n",
                       tag.c_str());
          chars = train_char_embeddings(
              TokenStream::from_file(input, TokenStream::Mode::Character), opt,
              corpus_hash);
          chars.set_prov({corpus_hash, want, opt.seed});
          chars.save(path);
        }
        ensure_vocab();
        std::vector<float> rows =
            diem_vectors_for_vocab(word_vocab, chars, threads);
        ens.storage.push_back(VectorSet::build(word_vocab, rows.data(),
                                               word_vocab.size(),
                                               chars.output_dim()));
        meta.emplace_back(true, power);
        continue;
      }

      TrainArgs targs;
      targs.input = input;
      targs.objective = objective;
      targs.style = get("style", "windowed");
      targs.window = std::stoi(get("window", "5"));
      targs.negatives = std::stoi(get("negative", "5"));
      targs.epochs = std::stoi(get("epochs", "5"));
      targs.subsample = std::stod(get("subsample", "1e-5"));
      targs.seed = std::stoull(get("seed", "1"));
      targs.threads = threads;
      TrainConfig tc = to_train_config(targs);
      // `dim` is the total vector size, split across the partitions.
      const std::int32_t dim = std::stoi(get("dim", "500"));
      const std::int32_t parts = tc.is_baseline()
                                     ? 1
                                     : tc.layout.embedding_partition_count();
      if (dim % parts != 0)
        throw Error("dim " + std::to_string(dim) + " not divisible by " +
                    std::to_string(parts) + " partitions");
      tc.layout.partition_dim = dim / parts;
      tc.validate();

      const std::string path = workdir + "/" + tag + ".model";
      const std::uint64_t want = config_fingerprint(tc);
      bool reuse = false;
      if (std::filesystem::exists(path)) {
        try {
          Model existing = load_model(path);
          if (existing.prov.config_hash == want &&
              existing.prov.corpus_hash == corpus_hash &&
              existing.prov.seed == tc.seed) {
            reuse = true;
            std::fprintf(stderr, "penn: [%s] skipping (config hash matches)\n",
                         tag.c_str());
            ens.storage.push_back(VectorSet::build(
                existing.vocab, existing.store.syn0().data(),
                existing.store.vocab_size(), existing.store.embedding_dim()));
            meta.emplace_back(false, power);
          }
        } catch (const Error&) {
          reuse = false;  // unreadable or stale: retrain
        }
      }
      if (!reuse) {
        ensure_corpus();
        tc.table_size = table_size_for(tc, word_vocab);
        std::fprintf(stderr, "penn: [%s] training %s (D = %lld)\n", tag.c_str(),
                     objective.c_str(),
                     static_cast<long long>(tc.effective_layout().embedding_dim()));
        Model m = train(encoded, word_vocab, tc, corpus_hash);
        save_model(m, path);
        ens.storage.push_back(VectorSet::build(m.vocab, m.store.syn0().data(),
                                               m.store.vocab_size(),
                                               m.store.embedding_dim()));
        meta.emplace_back(false, power);
      }
    } catch (const std::exception& e) {
      throw Error("pipeline member " + tag + " failed: " + e.what());
    }
  }

  if (ens.storage.empty()) throw Error("pipeline config has no members");
  if (auto v = cfg.get("", "top_k")) ens.spec.top_k = std::stoul(*v);
  if (auto v = cfg.get("", "diem_syntactic_only"))
    ens.spec.diem_syntactic_only = (*v == "true" || *v == "1");
  finish_spec(ens, meta);

  if (analogies.empty()) {
    std::fprintf(stderr,
                 "penn: pipeline trained %zu members (no --analogies given)\n",
                 ens.storage.size());
    return 0;
  }
  AnalogyDataset dataset = AnalogyDataset::parse_file(analogies);
  EvalReport report = ensemble_evaluate(ens.spec, dataset, threads);
  std::fputs(report.table().c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "penn: order-aware word embeddings (partitioned word-level models, "
      "character-level DIEM vectors, sharded training, analogy evaluation)"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand("train", "train a word model");
  add_train_flags(train_cmd, train_args, true);

  TrainArgs shard_args;
  std::int32_t shard_offset = 0;
  CLI::App* shard_cmd = app.add_subcommand(
      "shard-train", "train one window offset of a windowed PENN skip-gram");
  add_train_flags(shard_cmd, shard_args, false);
  shard_cmd->add_option("--offset", shard_offset, "window offset j (nonzero)")
      ->required();

  std::vector<std::string> merge_paths;
  std::string merge_out;
  bool merge_force = false;
  CLI::App* merge_cmd =
      app.add_subcommand("merge", "concatenate shards into the full model");
  merge_cmd->add_option("--out", merge_out, "output model")->required();
  merge_cmd->add_flag("--force", merge_force, "ignore provenance mismatches");
  merge_cmd->add_option("shards", merge_paths, "shard files")
      ->required()
      ->expected(-2);

  CharArgs char_args;
  char_args.base.window = 3;
  char_args.base.min_count = 25;
  char_args.base.epochs = 1;
  char_args.base.subsample = 0;
  CLI::App* chars_cmd =
      app.add_subcommand("train-chars", "train character embeddings");
  add_train_flags(chars_cmd, char_args.base, false);
  chars_cmd->add_option("--char-dim", char_args.char_dim,
                        "character vector size");
  chars_cmd->add_option("--multiple", char_args.multiple,
                        "DIEM output slots M (output dim = M * char-dim)");

  std::string diem_chars, diem_words, diem_vocab_model, diem_out;
  std::int32_t diem_threads = 1;
  CLI::App* diem_cmd = app.add_subcommand(
      "diem", "generate DIEM word vectors from a character model");
  diem_cmd->add_option("--chars", diem_chars, "character model file")
      ->required();
  auto* words_opt =
      diem_cmd->add_option("--words", diem_words, "word list (one per line)");
  diem_cmd->add_option("--vocab", diem_vocab_model,
                       "binary model whose vocabulary to use")
      ->excludes(words_opt);
  diem_cmd->add_option("--out", diem_out, "output text vectors")->required();
  diem_cmd->add_option("--threads", diem_threads, "worker threads");

  EvalArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "word-analogy evaluation and heatmaps");
  eval_cmd->add_option("--model", eval_args.model, "binary model");
  eval_cmd->add_option("--vectors", eval_args.vectors, "text vectors");
  eval_cmd->add_option("--diem", eval_args.diem,
                       "DIEM text vectors mixed in on syntactic queries");
  eval_cmd->add_option("--ensemble", eval_args.ensemble,
                       "ensemble spec config file");
  eval_cmd->add_option("--analogies", eval_args.analogies, "analogy dataset")
      ->required();
  eval_cmd->add_option("--heatmap", eval_args.heatmap_out,
                       "write the per-partition accuracy CSV here");
  eval_cmd->add_flag("--ablation", eval_args.ablation,
                     "heatmap by zeroing the partition instead of slicing it");
  eval_cmd->add_option("--csv", eval_args.csv_out, "write the report CSV here");
  eval_cmd->add_option("--threads", eval_args.threads, "worker threads");

  std::string query_model, query_vectors, query_word;
  std::size_t query_k = 10;
  CLI::App* query_cmd =
      app.add_subcommand("query", "nearest neighbours by cosine");
  query_cmd->add_option("--model", query_model, "binary model");
  query_cmd->add_option("--vectors", query_vectors, "text vectors");
  query_cmd->add_option("--word", query_word, "query word")->required();
  query_cmd->add_option("-k,--top", query_k, "neighbours to print");

  std::string hm_model, hm_analogies, hm_out;
  std::int32_t hm_threads = 1;
  bool hm_ablation = false;
  CLI::App* hm_cmd = app.add_subcommand(
      "heatmap", "per-partition analogy accuracy of a windowed model");
  hm_cmd->add_option("--model", hm_model, "binary windowed model")->required();
  hm_cmd->add_option("--analogies", hm_analogies, "analogy dataset")
      ->required();
  hm_cmd->add_option("--out", hm_out, "output CSV")->required();
  hm_cmd->add_flag("--ablation", hm_ablation, "zero the partition instead");
  hm_cmd->add_option("--threads", hm_threads, "worker threads");

  std::string pipe_config, pipe_input, pipe_workdir = "pipeline",
                           pipe_analogies;
  std::int32_t pipe_threads = 1;
  CLI::App* pipe_cmd = app.add_subcommand(
      "pipeline", "train a member list and ensemble-evaluate it");
  pipe_cmd->add_option("--config", pipe_config, "pipeline config")->required();
  pipe_cmd->add_option("--input", pipe_input, "training corpus")->required();
  pipe_cmd->add_option("--workdir", pipe_workdir, "member model directory");
  pipe_cmd->add_option("--analogies", pipe_analogies, "analogy dataset");
  pipe_cmd->add_option("--threads", pipe_threads, "worker threads");

  CLI::App* gen_cmd = app.add_subcommand(
      "datagen", "deterministic corpora for tests and offline runs");
  std::string gen_out;
  std::uint64_t gen_tokens = 1000000, gen_seed = 1;
  std::int32_t gen_bigrams = 100, gen_reps = 200;
  CLI::App* gen_corpus =
      gen_cmd->add_subcommand("corpus", "English-like training corpus");
  gen_corpus->add_option("--out", gen_out, "output file")->required();
  gen_corpus->add_option("--tokens", gen_tokens, "token budget");
  gen_corpus->add_option("--seed", gen_seed, "RNG seed");
  CLI::App* gen_analogies = gen_cmd->add_subcommand(
      "analogies", "analogy file with the canonical category structure");
  gen_analogies->add_option("--out", gen_out, "output file")->required();
  CLI::App* gen_big =
      gen_cmd->add_subcommand("bigrams", "corpus of order-planted bigrams");
  gen_big->add_option("--out", gen_out, "output file")->required();
  gen_big->add_option("--count", gen_bigrams, "planted bigram count");
  gen_big->add_option("--repetitions", gen_reps, "occurrences per bigram");
  gen_big->add_option("--seed", gen_seed, "RNG seed");
  gen_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*train_cmd) {
      apply_config_defaults(train_cmd, train_args);
      return cmd_train(train_args);
    }
    if (*shard_cmd) {
      apply_config_defaults(shard_cmd, shard_args);
      return cmd_shard_train(shard_args, shard_offset);
    }
    if (*merge_cmd) return cmd_merge(merge_paths, merge_out, merge_force);
    if (*chars_cmd) {
      apply_config_defaults(chars_cmd, char_args.base);
      return cmd_train_chars(char_args);
    }
    if (*diem_cmd) {
      if (diem_words.empty() && diem_vocab_model.empty())
        throw Error("diem needs --words or --vocab");
      return cmd_diem(diem_chars, diem_words, diem_vocab_model, diem_out,
                      diem_threads);
    }
    if (*eval_cmd) {
      if (eval_args.model.empty() && eval_args.vectors.empty() &&
          eval_args.ensemble.empty())
        throw Error("eval needs --model, --vectors or --ensemble");
      return cmd_eval(eval_args);
    }
    if (*query_cmd) {
      if (query_model.empty() && query_vectors.empty())
        throw Error("query needs --model or --vectors");
      return cmd_query(query_model, query_vectors, query_word, query_k);
    }
    if (*hm_cmd) {
      Model m = load_model(hm_model);
      AnalogyDataset dataset = AnalogyDataset::parse_file(hm_analogies);
      HeatmapResult hm =
          partition_heatmap(m.vocab, m.store, dataset, hm_threads, hm_ablation);
      std::ofstream out(hm_out);
      if (!out) throw Error("cannot open file for write: " + hm_out);
      out << hm.csv();
      return 0;
    }
    if (*pipe_cmd)
      return cmd_pipeline(pipe_config, pipe_input, pipe_workdir,
                          pipe_analogies, pipe_threads);
    if (*gen_cmd) {
      if (*gen_corpus) {
        datagen::write_corpus(gen_out, gen_tokens, gen_seed);
      } else if (*gen_analogies) {
        datagen::write_analogy_file(gen_out);
      } else {
        datagen::write_bigram_corpus(gen_out, gen_bigrams, gen_reps, gen_seed);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "penn: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
