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

#include "bench/bench.hpp"

#include <future>
#include <unordered_set>

#include <json.hpp>

#include "capture/relay_client.hpp"
#include "capture/script_player.hpp"
#include "core/error.hpp"
#include "relay/http_server.hpp"

namespace tilecast::bench {

const char* bench_mode_name(BenchMode mode) {
  return mode == BenchMode::tiled ? "tiled" : "fullframe-jpeg";
}

BenchMode parse_bench_mode(std::string_view text) {
  if (text == "tiled") return BenchMode::tiled;
  if (text == "fullframe" || text == "fullframe-jpeg") return BenchMode::fullframe_jpeg;
  throw Error(ErrorCode::invalid_argument,
              "unknown bench mode '" + std::string(text) + "' (tiled|fullframe)");
}

double average_kbps(std::uint64_t bytes_up, double duration_s) {
  if (duration_s <= 0) return 0;
  return 8.0 * static_cast<double>(bytes_up) / duration_s / 1000.0;
}

std::string report_to_json(const BandwidthReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = bench_mode_name(r.mode);
  j["tick_hz"] = r.tick_hz;
  j["duration_s"] = r.duration_s;
  j["codec"] = r.codec;
  j["reference_interval_s"] = r.reference_interval_s;
  j["header_bytes_per_request"] = r.header_bytes;
  j["requests"] = r.requests;
  j["body_bytes"] = r.body_bytes;
  j["bytes_up"] = r.bytes_up;
  j["bytes_down"] = r.bytes_down;
  j["avg_kbps"] = r.avg_kbps;
  j["tiles_sent"] = r.tiles_sent;
  j["ticks"] = r.ticks;
  // Published figures for other screen-sharing systems on a real browsing
  // session. Context only; nothing is compared against them.
  j["context_kbps"] = {{"reference_tiled_web_system", 280},
                       {"rdp", 130},
                       {"rdp_cold_cache", 225},
                       {"ultravnc", 521},
                       {"sharedview", 729}};
  return j.dump(2);
}

namespace {

// Replays a finished recording the way a viewer following it live would:
// one state fetch per update and one fetch per newly visible tile.
std::uint64_t replay_as_viewer(const std::string& url, const std::string& session,
                               std::uint64_t header_bytes) {
  capture::HttpRelayClient client(url);
  std::unordered_set<protocol::TileSignature> cached;
  const auto manifest = client.get_recording(session);
  for (const auto& entry : manifest.entries) {
    const auto state = client.get_recording_state(session, entry.ts_ms);
    if (!state.update) continue;
    for (const auto& pos : protocol::tiles_intersecting_viewport(state.update->viewport)) {
      const auto& sig = state.update->tile_map.at(pos);
      if (cached.contains(sig)) continue;
      if (client.get_tile(session, sig)) cached.insert(sig);
    }
  }
  return client.received_bytes() + client.get_requests() * header_bytes;
}

}  // namespace

BandwidthReport measure_tiled(const capture::SessionScript& script,
                              const std::filesystem::path& docs_dir,
                              const std::string& relay_url, const BenchOptions& options) {
  std::shared_ptr<relay::Relay> local_relay;
  std::unique_ptr<relay::HttpServer> local_server;
  std::string url = relay_url;
  if (url.empty()) {
    local_relay = std::make_shared<relay::Relay>(relay::RelayConfig{});
    local_server = std::make_unique<relay::HttpServer>(local_relay);
    const int port = local_server->bind("127.0.0.1", 0);
    local_server->start();
    url = "http://127.0.0.1:" + std::to_string(port);
  }

  capture::SessionStats stats;
  {
    capture::HttpRelayClient publisher(url);
    stats = capture::run_session(script, docs_dir, publisher, options.publisher);
  }

  BandwidthReport r;
  r.mode = BenchMode::tiled;
  r.tick_hz = options.publisher.tick_hz;
  r.duration_s = static_cast<double>(script.duration_ms()) / 1000.0;
  r.header_bytes = options.header_bytes;
  r.requests = stats.requests;
  r.body_bytes = stats.body_bytes;
  r.bytes_up = r.body_bytes + r.requests * r.header_bytes;
  r.avg_kbps = average_kbps(r.bytes_up, r.duration_s);
  r.tiles_sent = stats.tiles_uploaded;
  r.ticks = stats.ticks;
  r.codec = options.publisher.codec.to_string();
  r.reference_interval_s = options.publisher.reference_interval_s;

  std::vector<std::future<std::uint64_t>> viewers;
  for (int i = 0; i < options.viewers; ++i) {
    viewers.push_back(std::async(std::launch::async, replay_as_viewer, url, stats.session_id,
                                 options.header_bytes));
  }
  for (auto& v : viewers) r.bytes_down.push_back(v.get());
  if (local_server) local_server->stop();
  return r;
}

BandwidthReport measure_fullframe(const capture::SessionScript& script,
                                  const std::filesystem::path& docs_dir,
                                  const BenchOptions& options) {
  const auto& cfg = options.publisher;
  capture::ScriptPlayer player(script, capture::load_documents(script, docs_dir), docs_dir,
                               cfg.viewport_width, cfg.viewport_height);
  BandwidthReport r;
  r.mode = BenchMode::fullframe_jpeg;
  r.tick_hz = cfg.tick_hz;
  r.duration_s = static_cast<double>(script.duration_ms()) / 1000.0;
  r.header_bytes = options.header_bytes;
  r.codec = protocol::CodecPolicy::jpeg(options.jpeg_quality).to_string();

  const std::uint64_t ticks = capture::tick_count(script.duration_ms(), cfg.tick_hz);
  for (std::uint64_t k = 0; k < ticks; ++k) {
    const auto frame = player.advance_to(capture::tick_time_ms(k, cfg.tick_hz));
    const auto& vp = frame.viewport;
    protocol::Raster view(vp.viewport_width, vp.viewport_height);
    view.blit(frame.document->raster, -vp.scroll_x, -vp.scroll_y);
    r.body_bytes += protocol::encode_jpeg(view, options.jpeg_quality).size();
    ++r.requests;
  }
  r.ticks = ticks;
  r.tiles_sent = 0;
  r.bytes_up = r.body_bytes + r.requests * r.header_bytes;
  r.avg_kbps = average_kbps(r.bytes_up, r.duration_s);
  // Every viewer downloads every frame.
  r.bytes_down.assign(static_cast<std::size_t>(std::max(options.viewers, 0)), r.bytes_up);
  return r;
}

}  // namespace tilecast::bench
