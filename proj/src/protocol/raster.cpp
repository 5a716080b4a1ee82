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

#include "protocol/raster.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "core/error.hpp"

namespace tilecast::protocol {

Raster::Raster(std::int64_t w, std::int64_t h, Rgba fill) : width(w), height(h) {
  if (w < 0 || h < 0) throw Error(ErrorCode::invalid_geometry, "negative raster size");
  rgba.resize(static_cast<std::size_t>(w * h) * 4);
  for (std::size_t i = 0; i < rgba.size(); i += 4) std::memcpy(&rgba[i], fill.data(), 4);
}

std::span<const std::uint8_t> Raster::row(std::int64_t y) const {
  return std::span<const std::uint8_t>(rgba).subspan(static_cast<std::size_t>(y) * stride(),
                                                     stride());
}

Raster Raster::crop(std::int64_t x, std::int64_t y, std::int64_t w, std::int64_t h) const {
  if (x < 0 || y < 0 || w < 0 || h < 0 || x + w > width || y + h > height) {
    throw Error(ErrorCode::invalid_geometry,
                "crop " + std::to_string(w) + "x" + std::to_string(h) + "+" + std::to_string(x) +
                    "+" + std::to_string(y) + " outside " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  Raster out;
  out.width = w;
  out.height = h;
  out.rgba.resize(static_cast<std::size_t>(w * h) * 4);
  const std::size_t line = static_cast<std::size_t>(w) * 4;
  for (std::int64_t r = 0; r < h; ++r) {
    std::memcpy(&out.rgba[static_cast<std::size_t>(r) * line],
                &rgba[static_cast<std::size_t>(y + r) * stride() + static_cast<std::size_t>(x) * 4],
                line);
  }
  return out;
}

void Raster::blit(const Raster& src, std::int64_t x, std::int64_t y) {
  const std::int64_t x0 = std::max<std::int64_t>(x, 0);
  const std::int64_t y0 = std::max<std::int64_t>(y, 0);
  const std::int64_t x1 = std::min(x + src.width, width);
  const std::int64_t y1 = std::min(y + src.height, height);
  if (x0 >= x1 || y0 >= y1) return;
  const std::size_t line = static_cast<std::size_t>(x1 - x0) * 4;
  for (std::int64_t r = y0; r < y1; ++r) {
    std::memcpy(&rgba[static_cast<std::size_t>(r) * stride() + static_cast<std::size_t>(x0) * 4],
                &src.rgba[static_cast<std::size_t>(r - y) * src.stride() +
                          static_cast<std::size_t>(x0 - x) * 4],
                line);
  }
}

void Raster::fill_rect(std::int64_t x, std::int64_t y, std::int64_t w, std::int64_t h,
                       Rgba color) {
  const std::int64_t x0 = std::max<std::int64_t>(x, 0);
  const std::int64_t y0 = std::max<std::int64_t>(y, 0);
  const std::int64_t x1 = std::min(x + w, width);
  const std::int64_t y1 = std::min(y + h, height);
  for (std::int64_t r = y0; r < y1; ++r) {
    std::uint8_t* p = &rgba[static_cast<std::size_t>(r) * stride() + static_cast<std::size_t>(x0) * 4];
    for (std::int64_t c = x0; c < x1; ++c, p += 4) std::memcpy(p, color.data(), 4);
  }
}

Raster make_raster(std::int64_t width, std::int64_t height, std::span<const std::uint8_t> rgba) {
  if (width < 0 || height < 0 ||
      rgba.size() != static_cast<std::size_t>(width * height) * 4) {
    throw Error(ErrorCode::invalid_pixel_buffer,
                "pixel buffer has " + std::to_string(rgba.size()) + " bytes, expected " +
                    std::to_string(width * height * 4));
  }
  Raster r;
  r.width = width;
  r.height = height;
  r.rgba.assign(rgba.begin(), rgba.end());
  return r;
}

}  // namespace tilecast::protocol
