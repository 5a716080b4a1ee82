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

#include "protocol/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace tilecast::protocol {

namespace {

std::int64_t ceil_div(std::int64_t n, std::int64_t d) { return (n + d - 1) / d; }

// Keeps col/row representable as uint32 with room to spare.
constexpr std::int64_t kMaxDimension = std::int64_t{1} << 30;

}  // namespace

std::int64_t ViewportState::max_scroll_x() const {
  return std::max<std::int64_t>(0, scrollable_width - viewport_width);
}

std::int64_t ViewportState::max_scroll_y() const {
  return std::max<std::int64_t>(0, scrollable_height - viewport_height);
}

GridSize grid_size(std::int64_t scrollable_width, std::int64_t scrollable_height) {
  if (scrollable_width < 1 || scrollable_height < 1) {
    throw Error(ErrorCode::invalid_geometry,
                "scrollable area must be at least 1x1, got " + std::to_string(scrollable_width) +
                    "x" + std::to_string(scrollable_height));
  }
  if (scrollable_width > kMaxDimension || scrollable_height > kMaxDimension) {
    throw Error(ErrorCode::invalid_geometry, "scrollable area too large");
  }
  return GridSize{static_cast<std::uint32_t>(ceil_div(scrollable_width, kTileSize)),
                  static_cast<std::uint32_t>(ceil_div(scrollable_height, kTileSize))};
}

TileRect tile_rect(TilePos pos, std::int64_t scrollable_width, std::int64_t scrollable_height) {
  const GridSize grid = grid_size(scrollable_width, scrollable_height);
  if (pos.col >= grid.cols || pos.row >= grid.rows) {
    throw Error(ErrorCode::invalid_geometry, "tile (" + std::to_string(pos.col) + "," +
                                                 std::to_string(pos.row) + ") outside grid");
  }
  TileRect rect;
  rect.pos = pos;
  rect.x = std::int64_t{pos.col} * kTileSize;
  rect.y = std::int64_t{pos.row} * kTileSize;
  rect.width = std::min(kTileSize, scrollable_width - rect.x);
  rect.height = std::min(kTileSize, scrollable_height - rect.y);
  return rect;
}

std::vector<TileRect> compute_tile_grid(std::int64_t scrollable_width,
                                        std::int64_t scrollable_height) {
  const GridSize grid = grid_size(scrollable_width, scrollable_height);
  std::vector<TileRect> rects;
  rects.reserve(grid.count());
  for (std::uint32_t row = 0; row < grid.rows; ++row) {
    for (std::uint32_t col = 0; col < grid.cols; ++col) {
      rects.push_back(tile_rect(TilePos{col, row}, scrollable_width, scrollable_height));
    }
  }
  return rects;
}

void validate_viewport(const ViewportState& v) {
  grid_size(v.scrollable_width, v.scrollable_height);
  if (v.viewport_width < 1 || v.viewport_height < 1) {
    throw Error(ErrorCode::invalid_geometry, "viewport must be at least 1x1");
  }
  if (v.scroll_x < 0 || v.scroll_x > v.max_scroll_x()) {
    throw Error(ErrorCode::invalid_geometry, "scroll_x " + std::to_string(v.scroll_x) +
                                                 " outside [0, " +
                                                 std::to_string(v.max_scroll_x()) + "]");
  }
  if (v.scroll_y < 0 || v.scroll_y > v.max_scroll_y()) {
    throw Error(ErrorCode::invalid_geometry, "scroll_y " + std::to_string(v.scroll_y) +
                                                 " outside [0, " +
                                                 std::to_string(v.max_scroll_y()) + "]");
  }
}

std::vector<TilePos> tiles_intersecting_viewport(const ViewportState& v) {
  validate_viewport(v);
  const GridSize grid = grid_size(v.scrollable_width, v.scrollable_height);
  // Half-open window [scroll, scroll + size), clipped to the document.
  const std::int64_t x_end = std::min(v.scroll_x + v.viewport_width, v.scrollable_width);
  const std::int64_t y_end = std::min(v.scroll_y + v.viewport_height, v.scrollable_height);
  const auto col_first = static_cast<std::uint32_t>(v.scroll_x / kTileSize);
  const auto row_first = static_cast<std::uint32_t>(v.scroll_y / kTileSize);
  const auto col_last = std::min(static_cast<std::uint32_t>((x_end - 1) / kTileSize), grid.cols - 1);
  const auto row_last = std::min(static_cast<std::uint32_t>((y_end - 1) / kTileSize), grid.rows - 1);

  std::vector<TilePos> out;
  out.reserve(std::size_t{col_last - col_first + 1} * (row_last - row_first + 1));
  for (std::uint32_t row = row_first; row <= row_last; ++row) {
    for (std::uint32_t col = col_first; col <= col_last; ++col) out.push_back(TilePos{col, row});
  }
  return out;
}

ViewportState clamp_scroll(ViewportState v, std::int64_t scroll_x, std::int64_t scroll_y) {
  v.scroll_x = std::clamp<std::int64_t>(scroll_x, 0, v.max_scroll_x());
  v.scroll_y = std::clamp<std::int64_t>(scroll_y, 0, v.max_scroll_y());
  return v;
}

}  // namespace tilecast::protocol
