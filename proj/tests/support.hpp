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

// Fixtures shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <random>
#include <string>

#include "bench/assets.hpp"
#include "capture/page_document.hpp"
#include "capture/session_script.hpp"
#include "protocol/codec.hpp"
#include "protocol/update.hpp"
#include "relay/http_server.hpp"

namespace testsupport {

namespace fs = std::filesystem;
using namespace tilecast;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// In-process relay on a loopback port.
class LocalRelay {
 public:
  explicit LocalRelay(relay::RelayConfig config = {});
  ~LocalRelay();

  relay::Relay& relay() { return *relay_; }
  const std::string& url() const { return url_; }
  void stop();

 private:
  std::shared_ptr<relay::Relay> relay_;
  std::unique_ptr<relay::HttpServer> server_;
  std::string url_;
};

// Page whose pixels are noise seeded by `seed`, so no two tiles match.
capture::PageDocument noise_page(const std::string& url, std::int64_t w, std::int64_t h,
                                 std::uint64_t seed);

protocol::Raster noise_raster(std::int64_t w, std::int64_t h, std::mt19937_64& rng);

// Script on one document: navigate at 0, scroll down in `step` px increments
// every `every_ms` until the bottom, then back up, until duration_ms.
capture::SessionScript scroll_script(const std::string& doc_id, std::int64_t doc_height,
                                     std::int64_t viewport_height, std::int64_t step,
                                     std::int64_t every_ms, std::int64_t duration_ms);

// Writes script.jsonl and docs/ under dir; returns the script path.
fs::path write_assets(const bench::BenchmarkAssets& assets, const fs::path& dir);

// Composites the visible window of an update from tile payloads keyed by
// signature. Missing tiles are an error.
protocol::Raster composite_viewport(
    const protocol::UpdateMessage& update,
    const std::map<protocol::TileSignature, protocol::Raster>& tiles);

// Minimal valid update for a document of the given size, tile_map filled
// with signatures derived from (seed, pos).
protocol::UpdateMessage synthetic_update(std::uint64_t seq, std::int64_t ts_ms,
                                         std::int64_t doc_w, std::int64_t doc_h,
                                         std::int64_t scroll_y, std::uint64_t seed);

// Signature bytes depending only on (seed, col, row).
protocol::TileSignature fake_signature(std::uint64_t seed, std::uint32_t col, std::uint32_t row);

}  // namespace testsupport
