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

#include <random>

#include "capture/privacy.hpp"
#include "core/error.hpp"
#include "oracles.hpp"

using namespace tilecast;
using namespace tilecast::capture;

TEST_CASE("each enabled pattern is replaced") {
  const auto all = PrivacyPolicy::all();
  CHECK(redact("mail bob.smith@corp.example.com now", all) == "mail [REDACTED] now");
  CHECK(redact("ssn 123-45-6789.", all) == "ssn [REDACTED].");
  CHECK(redact("call (415) 555-0123 today", all) == "call [REDACTED] today");
  CHECK(redact("call 415.555.0123", all) == "call [REDACTED]");
  CHECK(redact("call +1 415-555-0123", all) == "call +[REDACTED]");
  CHECK(redact("visit 1600 Amphitheatre Parkway Rd soon", all) == "visit [REDACTED] soon");
  CHECK(redact("nothing to see", all) == "nothing to see");
}

TEST_CASE("disabled patterns are left alone") {
  PrivacyPolicy only_ssn;
  only_ssn.ssn = true;
  CHECK(redact("a@b.example 123-45-6789", only_ssn) == "a@b.example [REDACTED]");
  CHECK(redact("a@b.example", PrivacyPolicy::none()) == "a@b.example");
}

TEST_CASE("policy strings") {
  CHECK(PrivacyPolicy::parse("all").to_string() == "email,ssn,phone,address");
  CHECK(PrivacyPolicy::parse("none").to_string() == "none");
  CHECK(PrivacyPolicy::parse("phone,email").to_string() == "email,phone");
  CHECK_FALSE(PrivacyPolicy::parse("").any());
  CHECK_THROWS_AS(PrivacyPolicy::parse("passport"), Error);
}

TEST_CASE("filter keeps geometry and provenance") {
  const std::vector<text::TextRun> runs{{"id 123-45-6789", {1, 2, 3, 4}, "https://u/", 7}};
  const auto out = apply_privacy_filter(runs, PrivacyPolicy::all());
  REQUIRE(out.size() == 1);
  CHECK(out[0].text == "id [REDACTED]");
  CHECK(out[0].bbox == runs[0].bbox);
  CHECK(out[0].url == runs[0].url);
  CHECK(out[0].seq == 7);
}

TEST_CASE("no sensitive shape survives redaction (property)") {
  std::mt19937_64 rng(12);
  const auto digits = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + rng() % 10));
    return s;
  };
  const char* fillers[] = {"hello", "world", "x", "report", "a.b", "v2", "-", "@"};
  for (int i = 0; i < 300; ++i) {
    std::string text;
    for (int k = 0; k < 6; ++k) {
      switch (rng() % 5) {
        case 0: text += "user" + digits(2) + "@host" + digits(1) + ".example"; break;
        case 1: text += digits(3) + "-" + digits(2) + "-" + digits(4); break;
        case 2: text += digits(3) + "-" + digits(3) + "-" + digits(4); break;
        case 3: text += "(" + digits(3) + ") " + digits(3) + "." + digits(4); break;
        default: text += fillers[rng() % 8]; break;
      }
      text += rng() % 2 ? " " : ", ";
    }
    const auto out = redact(text, PrivacyPolicy::all());
    INFO(text, " -> ", out);
    CHECK_FALSE(oracle::contains_email_shape(out));
    CHECK_FALSE(oracle::contains_ssn_shape(out));
    CHECK_FALSE(oracle::contains_phone_shape(out));
  }
}
