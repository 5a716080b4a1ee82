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

#include "core/error.hpp"
#include "protocol/update.hpp"
#include "support.hpp"

using namespace tilecast;
using namespace tilecast::protocol;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("serialize/deserialize round trip") {
  auto u = testsupport::synthetic_update(3, 1250, 1024, 3000, 500, 1);
  u.new_tiles = {u.tile_map.at({0, 2}), u.tile_map.at({3, 4})};
  u.cursor.shape = CursorShape::text;
  const std::string wire = serialize_update(u);
  CHECK(deserialize_update(wire) == u);
  // Field order is part of the wire format.
  CHECK(wire.rfind(R"({"seq":3,"ts_ms":1250,"url":)", 0) == 0);
  CHECK(wire.find(R"("tiles":[{"c":0,"r":0,"sig":")") != std::string::npos);
}

TEST_CASE("unknown fields are ignored") {
  const auto u = testsupport::synthetic_update(1, 0, 300, 300, 0, 2);
  std::string wire = serialize_update(u);
  wire.insert(1, R"("extra":{"x":[1,2]},)");
  CHECK(deserialize_update(wire) == u);
}

TEST_CASE("malformed JSON reports a byte offset") {
  try {
    deserialize_update(R"({"seq": 1, "ts_ms": )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(e.byte_offset() > 10);
  }
}

TEST_CASE("invariants are enforced") {
  auto good = testsupport::synthetic_update(1, 0, 1024, 3000, 0, 3);
  CHECK_NOTHROW(validate_update(good));

  auto u = good;
  u.seq = 0;
  CHECK(code_of([&] { validate_update(u); }) == ErrorCode::validation);

  u = good;
  u.tile_map.erase({1, 1});
  CHECK(code_of([&] { validate_update(u); }) == ErrorCode::validation);

  u = good;
  u.tile_map[{9, 0}] = u.tile_map.at({0, 0});
  CHECK(code_of([&] { validate_update(u); }) == ErrorCode::validation);

  u = good;
  u.new_tiles.push_back(testsupport::fake_signature(99, 0, 0));
  CHECK(code_of([&] { validate_update(u); }) == ErrorCode::validation);

  u = good;
  u.viewport.scroll_y = 5000;
  CHECK(code_of([&] { validate_update(u); }) == ErrorCode::validation);

  u = good;
  u.timestamp_ms = -1;
  CHECK(code_of([&] { validate_update(u); }) == ErrorCode::validation);
}

TEST_CASE("cursor shape names round trip; unknown maps to the arrow") {
  for (auto s : {CursorShape::default_arrow, CursorShape::pointer, CursorShape::text,
                 CursorShape::wait, CursorShape::move, CursorShape::crosshair}) {
    CHECK(parse_cursor_shape(cursor_shape_name(s)) == s);
  }
  CHECK(parse_cursor_shape("zoom-in") == CursorShape::default_arrow);
}
