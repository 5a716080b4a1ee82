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

#include <algorithm>
#include <set>

#include "capture/capture.hpp"
#include "core/error.hpp"
#include "protocol/geometry.hpp"
#include "support.hpp"

using namespace tilecast;
using namespace tilecast::capture;
using protocol::TilePos;
using protocol::ViewportState;

namespace {

const protocol::CursorState kCursor{5, 5, protocol::CursorShape::default_arrow};

}  // namespace

TEST_CASE("first tick uploads exactly the visible tiles") {
  const auto doc = testsupport::noise_page("https://p.test/", 1024, 3000, 1);
  const ViewportState vp{1024, 768, 0, 0, 1024, 3000};
  const auto r = capture_tick(doc, vp, kCursor, {}, 1, 0);
  CHECK(r.update.tile_map.size() == 48);
  CHECK(r.tiles.size() == protocol::tiles_intersecting_viewport(vp).size());
  for (const auto& t : r.tiles) {
    CHECK(std::find(r.update.new_tiles.begin(), r.update.new_tiles.end(), t.signature) !=
          r.update.new_tiles.end());
    // Payload pixels hash to the advertised signature.
    const auto pixels = protocol::decode_image(t.bytes);
    bool matched = false;
    for (const auto& [pos, sig] : r.update.tile_map) {
      if (sig == t.signature) {
        matched = protocol::tile_signature(doc.url, pos, pixels.width, pixels.height,
                                           pixels.rgba) == sig;
      }
    }
    CHECK(matched);
  }
  CHECK_NOTHROW(protocol::validate_update(r.update));
}

TEST_CASE("sent tiles are not uploaded again; the heartbeat still goes out") {
  const auto doc = testsupport::noise_page("https://p.test/", 1024, 3000, 2);
  const ViewportState vp{1024, 768, 0, 0, 1024, 3000};
  SentSet sent;
  for (const auto& t : capture_tick(doc, vp, kCursor, sent, 1, 0).tiles) sent.insert(t.signature);
  const auto again = capture_tick(doc, vp, kCursor, sent, 2, 250);
  CHECK(again.tiles.empty());
  CHECK(again.update.new_tiles.empty());
  CHECK(again.update.seq == 2);
  CHECK(again.update.timestamp_ms == 250);

  // Scrolling one row reveals exactly one new row of tiles.
  const ViewportState down{1024, 768, 0, 256, 1024, 3000};
  CHECK(capture_tick(doc, down, kCursor, sent, 3, 500).tiles.size() == 4);
}

TEST_CASE("reference capture ignores the sent set") {
  const auto doc = testsupport::noise_page("https://p.test/", 1024, 3000, 3);
  const ViewportState vp{1024, 768, 0, 100, 1024, 3000};
  const auto r = reference_capture(doc, vp, kCursor, 9, 1000);
  CHECK(r.tiles.size() == protocol::tiles_intersecting_viewport(vp).size());
}

TEST_CASE("a mutation changes exactly the signatures of overlapped tiles") {
  const auto doc = testsupport::noise_page("https://p.test/", 1024, 3000, 4);
  auto sigs = compute_page_signatures(doc);
  const protocol::Raster patch(300, 20, {1, 2, 3, 255});
  const auto changed = apply_mutation(doc, 200, 250, patch);
  auto refreshed = sigs;
  refresh_signatures(refreshed, changed, 200, 250, 300, 20);
  CHECK(refreshed.signatures == compute_page_signatures(changed).signatures);

  std::set<std::pair<std::uint32_t, std::uint32_t>> diff;
  for (std::uint32_t r = 0; r < sigs.grid.rows; ++r) {
    for (std::uint32_t c = 0; c < sigs.grid.cols; ++c) {
      if (sigs.at({c, r}) != refreshed.at({c, r})) diff.emplace(c, r);
    }
  }
  // x 200..499 spans cols 0..1, y 250..269 spans rows 0..1.
  CHECK(diff == std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("mutations that do not fit are rejected") {
  const auto doc = testsupport::noise_page("https://p.test/", 300, 300, 5);
  const protocol::Raster patch(50, 50);
  try {
    apply_mutation(doc, 280, 0, patch);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::mutation);
  }
}

TEST_CASE("identical pixels at different positions get different signatures") {
  capture::PageDocument doc;
  doc.url = "https://blank.test/";
  doc.raster = protocol::Raster(512, 512, {255, 255, 255, 255});
  const auto sigs = compute_page_signatures(doc);
  const std::set<protocol::TileSignature> unique(sigs.signatures.begin(), sigs.signatures.end());
  CHECK(unique.size() == 4);
}
