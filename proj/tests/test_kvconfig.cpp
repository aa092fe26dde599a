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

#include "penn/kvconfig.hpp"

using namespace penn;

TEST_CASE("parse, canonicalize, emit is a fixed point") {
  const std::string text =
      "# a comment\n"
      "zeta = 3\n"
      "alpha = one two\n"
      "[member.b]\n"
      "dim = 500\n"
      "style = \"windowed\"\n"
      "[member.a]\n"
      "window = 10\n";
  KvConfig cfg = KvConfig::parse(text);
  const std::string canon = cfg.canonical();
  KvConfig again = KvConfig::parse(canon);
  CHECK(again.canonical() == canon);
  CHECK(again.fingerprint() == cfg.fingerprint());

  // Sections and keys are sorted in the canonical form.
  CHECK(canon.find("alpha = one two") < canon.find("zeta = 3"));
  CHECK(canon.find("[member.a]") < canon.find("[member.b]"));
  CHECK(cfg.get("member.b", "style") == std::string("windowed"));
}

TEST_CASE("same content in different order hashes identically") {
  KvConfig a = KvConfig::parse("x = 1\ny = 2\n[s]\nk = v\n");
  KvConfig b = KvConfig::parse("[s]\nk = v\n");
  b.set("", "y", "2");
  b.set("", "x", "1");
  CHECK(a.fingerprint() == b.fingerprint());
  b.set("", "x", "9");
  CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("lookup and section listing") {
  KvConfig cfg = KvConfig::parse("root = 1\n[m1]\na = 2\n[m2]\nb = 3\n");
  CHECK(cfg.get("", "root") == std::string("1"));
  CHECK(cfg.get("m1", "a") == std::string("2"));
  CHECK_FALSE(cfg.get("m1", "missing").has_value());
  CHECK_FALSE(cfg.get("nope", "a").has_value());
  CHECK(cfg.section_names() == std::vector<std::string>{"m1", "m2"});
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(KvConfig::parse("[unterminated\n"), Error);
  CHECK_THROWS_AS(KvConfig::parse("no equals sign\n"), Error);
  CHECK_THROWS_AS(KvConfig::parse("= value\n"), Error);
  CHECK_THROWS_AS(KvConfig::parse_file("missing_config_file.toml"), Error);
}
