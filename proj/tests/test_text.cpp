/*
 * Copyright (c) 2026, The Tilecast Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <thread>

#include "oracles.hpp"
#include "text/text_index.hpp"
#include "text/tokenizer.hpp"

using namespace tilecast::text;

namespace {

TextRun run(std::string text, std::int64_t x = 0, std::int64_t y = 0) {
  return TextRun{std::move(text), BBox{x, y, 50, 10}, "https://t.test/", 0};
}

}  // namespace

TEST_CASE("tokenizer splits on punctuation and lowercases") {
  CHECK(tokenize("Hello, World! foo-bar_baz 42") ==
        std::vector<std::string>{"hello", "world", "foo", "bar", "baz", "42"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("  ...  ").empty());
}

TEST_CASE("tokenizer keeps non-ASCII letters inside words") {
  CHECK(tokenize("Café au lait") == std::vector<std::string>{"café", "au", "lait"});
  // A stray continuation byte separates words instead of corrupting them.
  CHECK(tokenize("ab\x80" "cd") == std::vector<std::string>{"ab", "cd"});
}

TEST_CASE("tokenizer agrees with the ASCII oracle") {
  std::mt19937_64 rng(21);
  const std::string alphabet = "abcXYZ019 .,;:-_!?'\"()[]\t\n";
  for (int i = 0; i < 300; ++i) {
    std::string s;
    for (std::size_t k = rng() % 60; k > 0; --k) s.push_back(alphabet[rng() % alphabet.size()]);
    CHECK(tokenize(s) == oracle::ascii_words(s));
  }
}

TEST_CASE("search is exact-token and case-insensitive") {
  TextIndex index;
  const std::vector<TextRun> runs{run("Fuji Xerox homepage", 0, 0), run("contact us", 0, 20)};
  CHECK(index.index_runs("s1", 1, 100, runs) == 2);

  auto hits = index.search("XEROX", 10);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].session == "s1");
  CHECK(hits[0].seq == 1);
  CHECK(hits[0].timestamp_ms == 100);
  CHECK(hits[0].bbox == BBox{0, 0, 50, 10});
  CHECK(hits[0].snippet == "Fuji Xerox homepage");

  CHECK(index.search("xer", 10).empty());
  CHECK(index.search("", 10).empty());
  CHECK(index.search("xerox", 0).empty());
}

TEST_CASE("multi-word queries need every word in one capture") {
  TextIndex index;
  index.index_runs("s1", 1, 0, std::vector<TextRun>{run("alpha beta"), run("gamma")});
  index.index_runs("s1", 2, 10, std::vector<TextRun>{run("alpha")});
  index.index_runs("s2", 1, 0, std::vector<TextRun>{run("gamma")});

  const auto hits = index.search("alpha gamma", 10);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].seq == 1);
  CHECK(hits[0].snippet == "alpha beta");
  CHECK(hits[1].snippet == "gamma");
  CHECK(hits[0].session == "s1");
  CHECK(hits[1].session == "s1");

  CHECK(index.search("alpha", 1).size() == 1);
  CHECK(index.search("alpha", 10).size() == 2);
}

TEST_CASE("every indexed token is retrievable (exhaustive)") {
  std::mt19937_64 rng(4);
  const char* words[] = {"red", "green", "blue", "cyan", "magenta", "yellow", "black", "white"};
  TextIndex index;
  std::vector<std::pair<std::uint64_t, std::string>> corpus;
  for (std::uint64_t seq = 1; seq <= 10; ++seq) {
    std::vector<TextRun> runs;
    for (int r = 0; r < 3; ++r) {
      std::string text;
      for (int w = 0; w < 4; ++w) text += std::string(words[rng() % 8]) + " ";
      runs.push_back(run(text, r, static_cast<std::int64_t>(seq)));
      corpus.emplace_back(seq, text);
    }
    index.index_runs("s", seq, static_cast<std::int64_t>(seq * 100), runs);
  }
  for (const auto& [seq, text] : corpus) {
    for (const auto& token : oracle::ascii_words(text)) {
      const auto hits = index.search(token, 1000);
      const bool found = std::any_of(hits.begin(), hits.end(), [&](const SearchHit& h) {
        return h.seq == seq && h.snippet == text;
      });
      CHECK(found);
    }
  }
}

TEST_CASE("concurrent readers never see torn hits") {
  TextIndex index;
  std::atomic<bool> done{false};
  std::thread writer([&] {
    for (std::uint64_t seq = 1; seq <= 300; ++seq) {
      index.index_runs("s", seq, static_cast<std::int64_t>(seq), std::vector<TextRun>{run("needle hay")});
    }
    done = true;
  });
  std::size_t last = 0;
  while (!done) {
    const auto hits = index.search("needle", 100000);
    CHECK(hits.size() >= last);
    for (const auto& h : hits) REQUIRE(h.snippet == "needle hay");
    last = hits.size();
  }
  writer.join();
  CHECK(index.search("needle", 100000).size() == 300);
  CHECK(index.run_count() == 300);
}
