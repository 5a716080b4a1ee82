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

#include "protocol/update.hpp"

#include <algorithm>
#include <array>
#include <set>

#include <json.hpp>

#include "core/error.hpp"
#include "protocol/json_fields.hpp"

namespace tilecast::protocol {

namespace {

constexpr std::array<std::pair<CursorShape, const char*>, 6> kShapeNames{{
    {CursorShape::default_arrow, "default"},
    {CursorShape::pointer, "pointer"},
    {CursorShape::text, "text"},
    {CursorShape::wait, "wait"},
    {CursorShape::move, "move"},
    {CursorShape::crosshair, "crosshair"},
}};

}  // namespace

const char* cursor_shape_name(CursorShape shape) {
  for (const auto& [s, name] : kShapeNames) {
    if (s == shape) return name;
  }
  return "default";
}

CursorShape parse_cursor_shape(std::string_view name) {
  for (const auto& [s, n] : kShapeNames) {
    if (name == n) return s;
  }
  return CursorShape::default_arrow;
}

void validate_update(const UpdateMessage& u) {
  if (u.seq == 0) throw Error(ErrorCode::validation, "seq must be a positive integer");
  if (u.timestamp_ms < 0) throw Error(ErrorCode::validation, "ts_ms must be non-negative");
  try {
    validate_viewport(u.viewport);
  } catch (const Error& e) {
    throw Error(ErrorCode::validation, e.what());
  }
  const GridSize grid = grid_size(u.viewport.scrollable_width, u.viewport.scrollable_height);
  // Keys are unique, so in-range plus the right count means exact coverage.
  for (const auto& [pos, sig] : u.tile_map) {
    if (pos.col >= grid.cols || pos.row >= grid.rows) {
      throw Error(ErrorCode::validation, "tile_map has position (" + std::to_string(pos.col) +
                                             "," + std::to_string(pos.row) +
                                             ") outside the document grid");
    }
  }
  if (u.tile_map.size() != grid.count()) {
    throw Error(ErrorCode::validation, "tile_map covers " + std::to_string(u.tile_map.size()) +
                                           " of " + std::to_string(grid.count()) +
                                           " grid positions");
  }
  if (!u.new_tiles.empty()) {
    std::set<TileSignature> present;
    for (const auto& [pos, sig] : u.tile_map) present.insert(sig);
    for (const auto& sig : u.new_tiles) {
      if (!present.contains(sig)) {
        throw Error(ErrorCode::validation, "new tile " + sig.hex() + " is not in tile_map");
      }
    }
  }
}

std::string serialize_update(const UpdateMessage& u) {
  nlohmann::ordered_json j;
  j["seq"] = u.seq;
  j["ts_ms"] = u.timestamp_ms;
  j["url"] = u.url;
  j["vw"] = u.viewport.viewport_width;
  j["vh"] = u.viewport.viewport_height;
  j["sx"] = u.viewport.scroll_x;
  j["sy"] = u.viewport.scroll_y;
  j["sw"] = u.viewport.scrollable_width;
  j["sh"] = u.viewport.scrollable_height;
  j["cx"] = u.cursor.x;
  j["cy"] = u.cursor.y;
  j["cshape"] = cursor_shape_name(u.cursor.shape);
  auto tiles = nlohmann::ordered_json::array();
  for (const auto& [pos, sig] : u.tile_map) {
    tiles.push_back({{"c", pos.col}, {"r", pos.row}, {"sig", sig.hex()}});
  }
  j["tiles"] = std::move(tiles);
  auto fresh = nlohmann::ordered_json::array();
  for (const auto& sig : u.new_tiles) fresh.push_back(sig.hex());
  j["new"] = std::move(fresh);
  return j.dump();
}

UpdateMessage update_from_json(const nlohmann::json& j) {
  using detail::field;
  if (!j.is_object()) throw Error(ErrorCode::validation, "update must be a JSON object");
  UpdateMessage u;
  u.seq = field<std::uint64_t>(j, "seq");
  u.timestamp_ms = field<std::int64_t>(j, "ts_ms");
  u.url = field<std::string>(j, "url");
  u.viewport.viewport_width = field<std::int64_t>(j, "vw");
  u.viewport.viewport_height = field<std::int64_t>(j, "vh");
  u.viewport.scroll_x = field<std::int64_t>(j, "sx");
  u.viewport.scroll_y = field<std::int64_t>(j, "sy");
  u.viewport.scrollable_width = field<std::int64_t>(j, "sw");
  u.viewport.scrollable_height = field<std::int64_t>(j, "sh");
  u.cursor.x = field<std::int64_t>(j, "cx");
  u.cursor.y = field<std::int64_t>(j, "cy");
  u.cursor.shape = parse_cursor_shape(field<std::string>(j, "cshape"));

  const auto& tiles = detail::array_field(j, "tiles");
  for (const auto& t : tiles) {
    if (!t.is_object()) throw Error(ErrorCode::validation, "tiles[] entries must be objects");
    const TilePos pos{field<std::uint32_t>(t, "c"), field<std::uint32_t>(t, "r")};
    const auto sig = TileSignature::from_hex(field<std::string>(t, "sig"));
    if (!sig) throw Error(ErrorCode::validation, "tiles[].sig must be 32 hex characters");
    if (!u.tile_map.emplace(pos, *sig).second) {
      throw Error(ErrorCode::validation, "duplicate tile position (" + std::to_string(pos.col) +
                                             "," + std::to_string(pos.row) + ")");
    }
  }
  for (const auto& s : detail::array_field(j, "new")) {
    const auto sig = s.is_string() ? TileSignature::from_hex(s.get<std::string>()) : std::nullopt;
    if (!sig) throw Error(ErrorCode::validation, "new[] entries must be 32 hex characters");
    u.new_tiles.push_back(*sig);
  }
  validate_update(u);
  return u;
}

UpdateMessage deserialize_update(std::string_view bytes) {
  return update_from_json(detail::parse_json(bytes));
}

}  // namespace tilecast::protocol
