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

#include "capture/capture.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace tilecast::capture {

using protocol::kTileSize;
using protocol::TilePos;

namespace {

protocol::TileSignature hash_tile(const PageDocument& doc, TilePos pos) {
  const auto rect = protocol::tile_rect(pos, doc.raster.width, doc.raster.height);
  const auto pixels = doc.raster.crop(rect.x, rect.y, rect.width, rect.height);
  return protocol::tile_signature(doc.url, rect, pixels.rgba);
}

void check_consistent(const PageDocument& doc, const PageSignatures& sigs,
                      const protocol::ViewportState& v) {
  if (v.scrollable_width != doc.raster.width || v.scrollable_height != doc.raster.height) {
    throw Error(ErrorCode::capture,
                "viewport scrollable area " + std::to_string(v.scrollable_width) + "x" +
                    std::to_string(v.scrollable_height) + " does not match document " +
                    std::to_string(doc.raster.width) + "x" + std::to_string(doc.raster.height));
  }
  if (sigs.width != doc.raster.width || sigs.height != doc.raster.height || sigs.url != doc.url) {
    throw Error(ErrorCode::capture, "signatures were computed for a different document");
  }
  try {
    protocol::validate_viewport(v);
  } catch (const Error& e) {
    throw Error(ErrorCode::capture, e.what());
  }
}

CaptureResult capture(const PageDocument& doc, const PageSignatures& sigs,
                      const protocol::ViewportState& viewport,
                      const protocol::CursorState& cursor, const SentSet* sent,
                      std::uint64_t seq, std::int64_t ts_ms, const protocol::CodecPolicy& codec) {
  check_consistent(doc, sigs, viewport);
  CaptureResult result;
  auto& u = result.update;
  u.seq = seq;
  u.timestamp_ms = ts_ms;
  u.url = doc.url;
  u.viewport = viewport;
  u.cursor = cursor;
  u.tile_map = sigs.tile_map();

  for (const TilePos pos : protocol::tiles_intersecting_viewport(viewport)) {
    const auto& sig = sigs.at(pos);
    if (sent != nullptr && sent->contains(sig)) continue;
    const auto rect = protocol::tile_rect(pos, doc.raster.width, doc.raster.height);
    result.tiles.push_back(protocol::encode_tile(
        sig, doc.raster.crop(rect.x, rect.y, rect.width, rect.height), codec));
    u.new_tiles.push_back(sig);
  }
  return result;
}

}  // namespace

protocol::TileMap PageSignatures::tile_map() const {
  protocol::TileMap map;
  for (std::uint32_t row = 0; row < grid.rows; ++row) {
    for (std::uint32_t col = 0; col < grid.cols; ++col) {
      map.emplace_hint(map.end(), TilePos{col, row}, at(TilePos{col, row}));
    }
  }
  return map;
}

PageSignatures compute_page_signatures(const PageDocument& doc) {
  PageSignatures sigs;
  sigs.url = doc.url;
  sigs.width = doc.raster.width;
  sigs.height = doc.raster.height;
  sigs.grid = protocol::grid_size(doc.raster.width, doc.raster.height);
  sigs.signatures.reserve(sigs.grid.count());
  for (std::uint32_t row = 0; row < sigs.grid.rows; ++row) {
    for (std::uint32_t col = 0; col < sigs.grid.cols; ++col) {
      sigs.signatures.push_back(hash_tile(doc, TilePos{col, row}));
    }
  }
  return sigs;
}

void refresh_signatures(PageSignatures& sigs, const PageDocument& doc, std::int64_t x,
                        std::int64_t y, std::int64_t w, std::int64_t h) {
  if (w <= 0 || h <= 0) return;
  const auto x0 = std::clamp<std::int64_t>(x, 0, doc.raster.width - 1);
  const auto y0 = std::clamp<std::int64_t>(y, 0, doc.raster.height - 1);
  const auto x1 = std::clamp<std::int64_t>(x + w - 1, 0, doc.raster.width - 1);
  const auto y1 = std::clamp<std::int64_t>(y + h - 1, 0, doc.raster.height - 1);
  for (auto row = static_cast<std::uint32_t>(y0 / kTileSize);
       row <= static_cast<std::uint32_t>(y1 / kTileSize); ++row) {
    for (auto col = static_cast<std::uint32_t>(x0 / kTileSize);
         col <= static_cast<std::uint32_t>(x1 / kTileSize); ++col) {
      sigs.signatures[std::size_t{row} * sigs.grid.cols + col] = hash_tile(doc, TilePos{col, row});
    }
  }
}

CaptureResult capture_tick(const PageDocument& doc, const PageSignatures& sigs,
                           const protocol::ViewportState& viewport,
                           const protocol::CursorState& cursor, const SentSet& sent,
                           std::uint64_t seq, std::int64_t ts_ms,
                           const protocol::CodecPolicy& codec) {
  return capture(doc, sigs, viewport, cursor, &sent, seq, ts_ms, codec);
}

CaptureResult capture_tick(const PageDocument& doc, const protocol::ViewportState& viewport,
                           const protocol::CursorState& cursor, const SentSet& sent,
                           std::uint64_t seq, std::int64_t ts_ms,
                           const protocol::CodecPolicy& codec) {
  return capture(doc, compute_page_signatures(doc), viewport, cursor, &sent, seq, ts_ms, codec);
}

CaptureResult reference_capture(const PageDocument& doc, const PageSignatures& sigs,
                                const protocol::ViewportState& viewport,
                                const protocol::CursorState& cursor, std::uint64_t seq,
                                std::int64_t ts_ms, const protocol::CodecPolicy& codec) {
  return capture(doc, sigs, viewport, cursor, nullptr, seq, ts_ms, codec);
}

CaptureResult reference_capture(const PageDocument& doc, const protocol::ViewportState& viewport,
                                const protocol::CursorState& cursor, std::uint64_t seq,
                                std::int64_t ts_ms, const protocol::CodecPolicy& codec) {
  return capture(doc, compute_page_signatures(doc), viewport, cursor, nullptr, seq, ts_ms, codec);
}

void apply_mutation_in_place(PageDocument& doc, std::int64_t dest_x, std::int64_t dest_y,
                             const protocol::Raster& patch) {
  if (patch.width == 0 || patch.height == 0) return;
  if (dest_x < 0 || dest_y < 0 || dest_x + patch.width > doc.raster.width ||
      dest_y + patch.height > doc.raster.height) {
    throw Error(ErrorCode::mutation,
                "patch " + std::to_string(patch.width) + "x" + std::to_string(patch.height) +
                    " at (" + std::to_string(dest_x) + "," + std::to_string(dest_y) +
                    ") exceeds the " + std::to_string(doc.raster.width) + "x" +
                    std::to_string(doc.raster.height) + " raster");
  }
  doc.raster.blit(patch, dest_x, dest_y);
}

PageDocument apply_mutation(const PageDocument& doc, std::int64_t dest_x, std::int64_t dest_y,
                            const protocol::Raster& patch) {
  PageDocument out = doc;
  apply_mutation_in_place(out, dest_x, dest_y, patch);
  return out;
}

}  // namespace tilecast::capture
