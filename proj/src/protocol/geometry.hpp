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

#include <compare>
#include <cstdint>
#include <vector>

namespace tilecast::protocol {

inline constexpr std::int64_t kTileSize = 256;

// Grid position, anchored at the document origin (not the viewport).
struct TilePos {
  std::uint32_t col = 0;
  std::uint32_t row = 0;

  friend bool operator==(const TilePos&, const TilePos&) = default;
  // Row-major: the order tiles are enumerated and serialized in.
  friend std::strong_ordering operator<=>(const TilePos& a, const TilePos& b) {
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.col <=> b.col;
  }
};

struct TileRect {
  TilePos pos;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;

  friend bool operator==(const TileRect&, const TileRect&) = default;
};

struct GridSize {
  std::uint32_t cols = 0;
  std::uint32_t rows = 0;

  std::size_t count() const { return std::size_t{cols} * rows; }
  friend bool operator==(const GridSize&, const GridSize&) = default;
};

struct ViewportState {
  std::int64_t viewport_width = 0;
  std::int64_t viewport_height = 0;
  std::int64_t scroll_x = 0;
  std::int64_t scroll_y = 0;
  std::int64_t scrollable_width = 0;
  std::int64_t scrollable_height = 0;

  std::int64_t max_scroll_x() const;
  std::int64_t max_scroll_y() const;

  friend bool operator==(const ViewportState&, const ViewportState&) = default;
};

// Throws Error(invalid_geometry) when a dimension is < 1.
GridSize grid_size(std::int64_t scrollable_width, std::int64_t scrollable_height);

// Rect for one grid position; edge tiles are cropped to the document.
TileRect tile_rect(TilePos pos, std::int64_t scrollable_width, std::int64_t scrollable_height);

// All rects of the document grid in row-major order.
std::vector<TileRect> compute_tile_grid(std::int64_t scrollable_width,
                                        std::int64_t scrollable_height);

// Throws Error(invalid_geometry) naming the violated bound.
void validate_viewport(const ViewportState& viewport);

// Grid positions whose rect intersects the visible window, row-major.
std::vector<TilePos> tiles_intersecting_viewport(const ViewportState& viewport);

// Clamp a requested scroll offset into the legal range for this viewport.
ViewportState clamp_scroll(ViewportState viewport, std::int64_t scroll_x, std::int64_t scroll_y);

}  // namespace tilecast::protocol
