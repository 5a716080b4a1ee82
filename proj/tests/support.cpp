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

#include "support.hpp"

#include <algorithm>
#include <stdexcept>

#include "capture/page_document.hpp"
#include "protocol/geometry.hpp"

namespace testsupport {

TempDir::TempDir() {
  std::random_device rd;
  const auto base = fs::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = base / ("tilecast-test-" + std::to_string(rd()) + std::to_string(rd()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

LocalRelay::LocalRelay(relay::RelayConfig config)
    : relay_(std::make_shared<relay::Relay>(std::move(config))),
      server_(std::make_unique<relay::HttpServer>(relay_)) {
  const int port = server_->bind("127.0.0.1", 0);
  server_->start();
  url_ = "http://127.0.0.1:" + std::to_string(port);
}

LocalRelay::~LocalRelay() { stop(); }

void LocalRelay::stop() {
  if (server_) server_->stop();
}

protocol::Raster noise_raster(std::int64_t w, std::int64_t h, std::mt19937_64& rng) {
  // 4x4 blocks of random colour: every tile is distinct, PNGs stay small.
  protocol::Raster r(w, h);
  for (std::int64_t y = 0; y < h; y += 4) {
    for (std::int64_t x = 0; x < w; x += 4) {
      const auto v = rng();
      r.fill_rect(x, y, std::min<std::int64_t>(4, w - x), std::min<std::int64_t>(4, h - y),
                  {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                   static_cast<std::uint8_t>(v >> 16), 255});
    }
  }
  return r;
}

capture::PageDocument noise_page(const std::string& url, std::int64_t w, std::int64_t h,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  capture::PageDocument doc;
  doc.url = url;
  doc.raster = noise_raster(w, h, rng);
  return doc;
}

capture::SessionScript scroll_script(const std::string& doc_id, std::int64_t doc_height,
                                     std::int64_t viewport_height, std::int64_t step,
                                     std::int64_t every_ms, std::int64_t duration_ms) {
  capture::SessionScript s;
  s.events.push_back({0, capture::NavigateEvent{doc_id, std::nullopt, std::nullopt}});
  const std::int64_t max_y = std::max<std::int64_t>(doc_height - viewport_height, 0);
  std::int64_t y = 0;
  std::int64_t dir = 1;
  for (std::int64_t t = every_ms; t < duration_ms; t += every_ms) {
    if (y + dir * step > max_y || y + dir * step < 0) dir = -dir;
    y = std::clamp<std::int64_t>(y + dir * step, 0, max_y);
    s.events.push_back({t, capture::ScrollEvent{0, y}});
  }
  s.events.push_back({duration_ms, capture::EndEvent{}});
  return s;
}

fs::path write_assets(const bench::BenchmarkAssets& assets, const fs::path& dir) {
  bench::write_benchmark_assets(assets, dir);
  return dir / "script.jsonl";
}

protocol::Raster composite_viewport(
    const protocol::UpdateMessage& update,
    const std::map<protocol::TileSignature, protocol::Raster>& tiles) {
  const auto& vp = update.viewport;
  protocol::Raster out(vp.viewport_width, vp.viewport_height, {0, 0, 0, 0});
  for (const auto& pos : protocol::tiles_intersecting_viewport(vp)) {
    const auto& sig = update.tile_map.at(pos);
    const auto it = tiles.find(sig);
    if (it == tiles.end()) throw std::runtime_error("tile " + sig.hex() + " not fetched");
    out.blit(it->second, std::int64_t{pos.col} * protocol::kTileSize - vp.scroll_x,
             std::int64_t{pos.row} * protocol::kTileSize - vp.scroll_y);
  }
  return out;
}

protocol::TileSignature fake_signature(std::uint64_t seed, std::uint32_t col, std::uint32_t row) {
  const std::string key = std::to_string(seed) + ":" + std::to_string(col) + ":" +
                          std::to_string(row);
  return protocol::TileSignature(protocol::md5(
      std::span(reinterpret_cast<const std::uint8_t*>(key.data()), key.size())));
}

protocol::UpdateMessage synthetic_update(std::uint64_t seq, std::int64_t ts_ms,
                                         std::int64_t doc_w, std::int64_t doc_h,
                                         std::int64_t scroll_y, std::uint64_t seed) {
  protocol::UpdateMessage u;
  u.seq = seq;
  u.timestamp_ms = ts_ms;
  u.url = "https://example.test/" + std::to_string(seed);
  u.viewport = {std::min<std::int64_t>(doc_w, 1024), std::min<std::int64_t>(doc_h, 768), 0,
                scroll_y, doc_w, doc_h};
  u.cursor = {10, 20 + scroll_y, protocol::CursorShape::pointer};
  const auto grid = protocol::grid_size(doc_w, doc_h);
  for (std::uint32_t r = 0; r < grid.rows; ++r) {
    for (std::uint32_t c = 0; c < grid.cols; ++c) u.tile_map[{c, r}] = fake_signature(seed, c, r);
  }
  return u;
}

}  // namespace testsupport
