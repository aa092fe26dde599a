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
#include <string>
#include <vector>

namespace penn::datagen {

struct WordPair {
  const char* a;
  const char* b;
};

// Curated English relation lists backing both the corpus generator and the
// analogy-file generator, so every question word occurs in the corpus.
struct Lexicon {
  std::vector<WordPair> capitals;       // (capital, country); first 23 = common
  std::vector<WordPair> currencies;     // (country, currency)
  std::vector<WordPair> city_state;     // (city, state)
  std::vector<WordPair> family;         // (male, female)
  std::vector<WordPair> adj_adverb;     // (adjective, adverb)
  std::vector<WordPair> opposites;      // (word, negated word)
  std::vector<WordPair> comparatives;   // (adjective, comparative)
  std::vector<WordPair> superlatives;   // (adjective, superlative)
  std::vector<WordPair> participles;    // (verb, -ing form)
  std::vector<WordPair> nationalities;  // (country, adjective)
  std::vector<WordPair> past_tense;     // (verb, past form)
  std::vector<WordPair> plurals;        // (singular, plural)
  std::vector<WordPair> plural_verbs;   // (base verb, third person)
  std::vector<WordPair> diem_plurals;   // regular +s pairs for DIEM checks
};

const Lexicon& lexicon();

// Writes an analogy file with the canonical category structure: the fourteen
// category names, per-category question counts and the 19,544 total.
void write_analogy_file(const std::string& path);

// English-like corpus built from the lexicon: morphology carried by adjacent
// ordered cues, relation-binding sentences, number/year tokens for the digit
// characters. Newline-delimited sentences, lowercase, deterministic in seed.
void write_corpus(const std::string& path, std::uint64_t target_tokens,
                  std::uint64_t seed);

// Corpus where bigram order carries all signal: each planted (left, right)
// pair appears `repetitions` times in that order and never reversed.
std::vector<std::pair<std::string, std::string>> write_bigram_corpus(
    const std::string& path, std::int32_t n_bigrams, std::int32_t repetitions,
    std::uint64_t seed);

}  // namespace penn::datagen
