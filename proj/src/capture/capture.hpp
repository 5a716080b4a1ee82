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
#include <unordered_set>
#include <vector>

#include "capture/page_document.hpp"
#include "protocol/codec.hpp"
#include "protocol/update.hpp"

namespace tilecast::capture {

// Signatures already acknowledged by the relay during this session.
using SentSet = std::unordered_set<protocol::TileSignature>;

// Signatures for every grid position of one document, row-major.
struct PageSignatures {
  std::string url;
  std::int64_t width = 0;
  std::int64_t height = 0;
  protocol::GridSize grid;
  std::vector<protocol::TileSignature> signatures;

  const protocol::TileSignature& at(protocol::TilePos pos) const {
    return signatures[std::size_t{pos.row} * grid.cols + pos.col];
  }
  protocol::TileMap tile_map() const;
};

PageSignatures compute_page_signatures(const PageDocument& doc);

// Re-hashes only the tiles overlapping the given document rectangle.
void refresh_signatures(PageSignatures& sigs, const PageDocument& doc, std::int64_t x,
                        std::int64_t y, std::int64_t w, std::int64_t h);

struct CaptureResult {
  protocol::UpdateMessage update;
  std::vector<protocol::TileRecord> tiles;
};

// One capture tick. tile_map spans the whole document grid; tiles holds
// records for viewport-intersecting signatures absent from `sent`. The update
// is produced even when no tile is new. `sent` is not modified: signatures
// enter it once the relay acknowledges the upload.
CaptureResult capture_tick(const PageDocument& doc, const protocol::ViewportState& viewport,
                           const protocol::CursorState& cursor, const SentSet& sent,
                           std::uint64_t seq, std::int64_t ts_ms,
                           const protocol::CodecPolicy& codec = {});

// Same, with signatures maintained by the caller.
CaptureResult capture_tick(const PageDocument& doc, const PageSignatures& sigs,
                           const protocol::ViewportState& viewport,
                           const protocol::CursorState& cursor, const SentSet& sent,
                           std::uint64_t seq, std::int64_t ts_ms,
                           const protocol::CodecPolicy& codec = {});

// Like capture_tick but re-encodes every viewport-intersecting tile,
// ignoring `sent`.
CaptureResult reference_capture(const PageDocument& doc, const protocol::ViewportState& viewport,
                                const protocol::CursorState& cursor, std::uint64_t seq,
                                std::int64_t ts_ms, const protocol::CodecPolicy& codec = {});

CaptureResult reference_capture(const PageDocument& doc, const PageSignatures& sigs,
                                const protocol::ViewportState& viewport,
                                const protocol::CursorState& cursor, std::uint64_t seq,
                                std::int64_t ts_ms, const protocol::CodecPolicy& codec = {});

// Returns a copy of doc with patch written at (dest_x, dest_y). Throws
// Error(mutation) if the patch does not fit inside the raster.
PageDocument apply_mutation(const PageDocument& doc, std::int64_t dest_x, std::int64_t dest_y,
                            const protocol::Raster& patch);

// In-place variant used by the publisher.
void apply_mutation_in_place(PageDocument& doc, std::int64_t dest_x, std::int64_t dest_y,
                             const protocol::Raster& patch);

}  // namespace tilecast::capture
