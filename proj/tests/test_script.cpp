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

#include "capture/script_player.hpp"
#include "capture/session_script.hpp"
#include "core/error.hpp"
#include "support.hpp"

using namespace tilecast;
using namespace tilecast::capture;

TEST_CASE("tick schedule") {
  CHECK(tick_count(150000, 4.0) == 600);
  CHECK(tick_count(60000, 4.0) == 240);
  CHECK(tick_count(1000, 3.0) == 3);
  CHECK(tick_time_ms(3, 3.0) == 1000);
  CHECK(tick_time_ms(1, 3.0) == 333);
  CHECK_THROWS_AS(tick_count(1000, 0), Error);
}

TEST_CASE("script JSONL round trip") {
  const std::string text =
      R"({"t_ms":0,"ev":"navigate","doc":"a","vw":800,"vh":600})" "\n"
      "\n"
      R"({"t_ms":100,"ev":"cursor","x":5,"y":6,"shape":"pointer"})" "\n"
      R"({"t_ms":200,"ev":"scroll","x":0,"y":40})" "\n"
      R"({"t_ms":300,"ev":"mutate","x":1,"y":2,"w":3,"h":4,"fill":"#ff000080"})" "\n"
      R"({"t_ms":400,"ev":"end"})" "\n";
  const auto s = parse_session_script(text);
  REQUIRE(s.events.size() == 5);
  CHECK(s.duration_ms() == 400);
  const auto& m = std::get<MutateEvent>(s.events[3].action);
  CHECK(m.fill == protocol::Rgba{255, 0, 0, 128});
  CHECK(std::get<NavigateEvent>(s.events[0].action).viewport_width == 800);
  CHECK(parse_session_script(serialize_session_script(s)) == s);
}

TEST_CASE("script errors name the line") {
  const std::string text = R"({"t_ms":0,"ev":"navigate","doc":"a"})" "\n"
                           R"({"t_ms":5,"ev":"teleport"})" "\n";
  try {
    parse_session_script(text);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("structural validation") {
  SessionScript s;
  s.events.push_back({0, NavigateEvent{"a", {}, {}}});
  CHECK_THROWS_AS(validate_script(s), Error);  // no end
  s.events.push_back({10, EndEvent{}});
  CHECK_NOTHROW(validate_script(s));
  s.events.insert(s.events.begin() + 1, {20, ScrollEvent{0, 1}});
  CHECK_THROWS_AS(validate_script(s), Error);  // time goes backwards at end
  SessionScript late;
  late.events = {{5, NavigateEvent{"a", {}, {}}}, {10, EndEvent{}}};
  CHECK_THROWS_AS(validate_script(late), Error);
}

TEST_CASE("player applies scrolls, interpolates the cursor and keeps mutations") {
  DocumentSet docs;
  docs["a"] = testsupport::noise_page("https://a/", 1024, 2000, 1);
  SessionScript s;
  s.events = {{0, NavigateEvent{"a", {}, {}}},
              {0, CursorEvent{0, 0, protocol::CursorShape::default_arrow}},
              {1000, CursorEvent{100, 200, protocol::CursorShape::pointer}},
              {1500, ScrollEvent{0, 300}},
              {1600, MutateEvent{0, 0, "", 10, 10, {1, 2, 3, 255}}},
              {5000, EndEvent{}}};
  ScriptPlayer player(s, docs, ".");
  auto f = player.advance_to(0);
  CHECK(f.navigated);
  CHECK(f.viewport.viewport_width == 1024);
  f = player.advance_to(500);
  CHECK_FALSE(f.navigated);
  CHECK(f.cursor.x == 50);
  CHECK(f.cursor.y == 100);
  f = player.advance_to(1500);
  CHECK(f.viewport.scroll_y == 300);
  f = player.advance_to(1700);
  REQUIRE(f.mutations.size() == 1);
  CHECK(f.document->raster.rgba[0] == 1);
  CHECK(player.advance_to(1800).mutations.empty());
  CHECK_THROWS_AS(player.advance_to(1000), Error);
}

TEST_CASE("out-of-bounds scroll is a validation error") {
  DocumentSet docs;
  docs["a"] = testsupport::noise_page("https://a/", 1024, 1000, 1);
  SessionScript s;
  s.events = {{0, NavigateEvent{"a", {}, {}}}, {10, ScrollEvent{0, 500}}, {20, EndEvent{}}};
  ScriptPlayer player(s, docs, ".");
  try {
    player.advance_to(10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::validation);
  }
}
