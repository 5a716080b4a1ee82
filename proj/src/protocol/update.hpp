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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "protocol/geometry.hpp"
#include "protocol/signature.hpp"

namespace tilecast::protocol {

enum class CursorShape { default_arrow, pointer, text, wait, move, crosshair };

const char* cursor_shape_name(CursorShape shape);
// Unknown names map to CursorShape::default_arrow.
CursorShape parse_cursor_shape(std::string_view name);

struct CursorState {
  std::int64_t x = 0;
  std::int64_t y = 0;
  CursorShape shape = CursorShape::default_arrow;

  friend bool operator==(const CursorState&, const CursorState&) = default;
};

using TileMap = std::map<TilePos, TileSignature>;

// One capture tick. tile_map always spans the full document grid, whether or
// not any tile changed.
struct UpdateMessage {
  std::uint64_t seq = 0;
  std::int64_t timestamp_ms = 0;
  std::string url;
  ViewportState viewport;
  CursorState cursor;
  TileMap tile_map;
  std::vector<TileSignature> new_tiles;

  friend bool operator==(const UpdateMessage&, const UpdateMessage&) = default;
};

// Throws Error(validation) naming the violated invariant.
void validate_update(const UpdateMessage& update);

// Compact JSON in the wire field order.
std::string serialize_update(const UpdateMessage& update);

// Throws ParseError (with byte offset) on malformed JSON and Error(validation)
// when the decoded message breaks an invariant. Unknown fields are ignored.
UpdateMessage deserialize_update(std::string_view bytes);

}  // namespace tilecast::protocol
