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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace tilecast::protocol {

using Rgba = std::array<std::uint8_t, 4>;

// Owned RGBA8 image, row-major, no padding between rows.
struct Raster {
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::vector<std::uint8_t> rgba;

  Raster() = default;
  Raster(std::int64_t w, std::int64_t h, Rgba fill = {255, 255, 255, 255});

  bool empty() const { return width == 0 || height == 0; }
  std::size_t stride() const { return static_cast<std::size_t>(width) * 4; }
  std::span<const std::uint8_t> row(std::int64_t y) const;

  // Copy of [x, x+w) × [y, y+h); the region must lie inside the raster.
  Raster crop(std::int64_t x, std::int64_t y, std::int64_t w, std::int64_t h) const;

  // Copies src with its origin at (x, y), clipped to this raster.
  void blit(const Raster& src, std::int64_t x, std::int64_t y);

  void fill_rect(std::int64_t x, std::int64_t y, std::int64_t w, std::int64_t h, Rgba color);

  friend bool operator==(const Raster&, const Raster&) = default;
};

// Validates that a raw buffer holds 4 × width × height bytes and wraps it.
Raster make_raster(std::int64_t width, std::int64_t height, std::span<const std::uint8_t> rgba);

}  // namespace tilecast::protocol
