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

#include "tilecast/tilecast.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "bench/assets.hpp"
#include "bench/bench.hpp"
#include "capture/publisher.hpp"
#include "capture/relay_client.hpp"
#include "core/error.hpp"
#include "protocol/geometry.hpp"
#include "protocol/signature.hpp"
#include "relay/http_server.hpp"

namespace {

using namespace tilecast;

thread_local std::string g_last_error;

tc_status fail(tc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into a status plus tc_last_error().
template <typename Fn>
tc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return TC_OK;
  } catch (const Error& e) {
    return fail(static_cast<tc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TC_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_hex(const std::string& hex, char out[TC_HEX_DIGEST_LEN]) {
  std::memcpy(out, hex.c_str(), TC_HEX_DIGEST_LEN);
}

std::filesystem::path default_docs_dir(const std::filesystem::path& script) {
  const auto dir = script.parent_path();
  return std::filesystem::is_directory(dir / "docs") ? dir / "docs" : dir;
}

}  // namespace

struct tc_relay {
  std::shared_ptr<relay::Relay> relay;
  std::unique_ptr<relay::HttpServer> server;
  bool started = false;
};

extern "C" {

const char* tc_version(void) { return "0.1.0"; }

const char* tc_status_name(tc_status status) {
  if (status == TC_OK) return "ok";
  if (status == TC_ERR_INTERNAL) return "internal";
  if (status >= TC_ERR_INVALID_ARGUMENT && status <= TC_ERR_IO) {
    return error_code_name(static_cast<ErrorCode>(status));
  }
  return "unknown";
}

const char* tc_last_error(void) { return g_last_error.c_str(); }

void tc_string_free(char* s) { std::free(s); }

tc_status tc_md5_hex(const void* data, size_t len, char out[TC_HEX_DIGEST_LEN]) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    require(data != nullptr || len == 0, "data must not be NULL");
    const auto* p = static_cast<const std::uint8_t*>(data);
    copy_hex(protocol::to_hex(protocol::md5(std::span<const std::uint8_t>(p, len))), out);
  });
}

tc_status tc_tile_signature(const char* url, int64_t col, int64_t row, int64_t width,
                            int64_t height, const uint8_t* rgba, size_t rgba_len,
                            char out[TC_HEX_DIGEST_LEN]) {
  return guarded([&] {
    require(url != nullptr && out != nullptr, "url and out must not be NULL");
    require(rgba != nullptr || rgba_len == 0, "rgba must not be NULL");
    if (col < 0 || row < 0 || col > UINT32_MAX || row > UINT32_MAX) {
      throw Error(ErrorCode::invalid_geometry, "tile position out of range");
    }
    const protocol::TilePos pos{static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(row)};
    const auto sig = protocol::tile_signature(url, pos, width, height,
                                              std::span<const std::uint8_t>(rgba, rgba_len));
    copy_hex(sig.hex(), out);
  });
}

tc_status tc_grid_size(int64_t scrollable_width, int64_t scrollable_height, int64_t* cols,
                       int64_t* rows) {
  return guarded([&] {
    require(cols != nullptr && rows != nullptr, "cols and rows must not be NULL");
    const auto g = protocol::grid_size(scrollable_width, scrollable_height);
    *cols = g.cols;
    *rows = g.rows;
  });
}

tc_status tc_visible_tiles(int64_t viewport_width, int64_t viewport_height, int64_t scroll_x,
                           int64_t scroll_y, int64_t scrollable_width, int64_t scrollable_height,
                           int64_t* out_pairs, size_t capacity_pairs, size_t* count) {
  return guarded([&] {
    require(count != nullptr, "count must not be NULL");
    require(out_pairs != nullptr || capacity_pairs == 0, "out_pairs must not be NULL");
    const protocol::ViewportState vp{viewport_width, viewport_height, scroll_x,
                                     scroll_y,       scrollable_width, scrollable_height};
    const auto tiles = protocol::tiles_intersecting_viewport(vp);
    *count = tiles.size();
    const std::size_t n = std::min(tiles.size(), capacity_pairs);
    for (std::size_t i = 0; i < n; ++i) {
      out_pairs[2 * i] = tiles[i].col;
      out_pairs[2 * i + 1] = tiles[i].row;
    }
    if (n < tiles.size()) {
      throw Error(ErrorCode::capacity, "output holds " + std::to_string(capacity_pairs) +
                                           " pairs, need " + std::to_string(tiles.size()));
    }
  });
}

void tc_relay_config_init(tc_relay_config* config) {
  if (!config) return;
  *config = tc_relay_config{nullptr, 1, nullptr, -1, nullptr, nullptr};
}

tc_status tc_relay_create(const tc_relay_config* config, tc_relay** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "config and out must not be NULL");
    *out = nullptr;
    relay::RelayConfig c = config->config_path ? relay::load_relay_config(config->config_path)
                                               : relay::RelayConfig{};
    if (config->use_env) {
      c = relay::apply_env_overrides(std::move(c), [](const char* n) { return std::getenv(n); });
    }
    if (config->listen_address) c.listen_address = config->listen_address;
    if (config->port >= 0) c.port = config->port;
    if (config->storage_root) c.storage_root = config->storage_root;
    if (config->viewer_root) c.viewer_root = config->viewer_root;
    auto handle = std::make_unique<tc_relay>();
    handle->relay = std::make_shared<relay::Relay>(c);
    handle->server = std::make_unique<relay::HttpServer>(handle->relay);
    handle->server->bind(c.listen_address, c.port);
    *out = handle.release();
  });
}

tc_status tc_relay_start(tc_relay* relay) {
  return guarded([&] {
    require(relay != nullptr, "relay must not be NULL");
    if (relay->started) throw Error(ErrorCode::conflict, "relay already started");
    relay->started = true;
    relay->server->start();
  });
}

tc_status tc_relay_run(tc_relay* relay) {
  return guarded([&] {
    require(relay != nullptr, "relay must not be NULL");
    if (relay->started) throw Error(ErrorCode::conflict, "relay already started");
    relay->started = true;
    relay->server->run();
  });
}

tc_status tc_relay_stop(tc_relay* relay) {
  return guarded([&] {
    require(relay != nullptr, "relay must not be NULL");
    relay->server->stop();
  });
}

int tc_relay_port(const tc_relay* relay) { return relay ? relay->server->port() : -1; }

void tc_relay_destroy(tc_relay* relay) {
  if (!relay) return;
  try {
    relay->server->stop();
  } catch (...) {
  }
  delete relay;
}

void tc_publish_options_init(tc_publish_options* options) {
  if (!options) return;
  const capture::PublisherConfig d;
  *options = tc_publish_options{nullptr, nullptr, nullptr, d.tick_hz, d.reference_interval_s,
                                nullptr, nullptr, 1,       0,         0};
}

tc_status tc_publish(const tc_publish_options* options, char** out_json) {
  return guarded([&] {
    require(options != nullptr, "options must not be NULL");
    require(options->server_url && options->script_path, "server_url and script_path required");
    capture::PublisherConfig cfg;
    cfg.tick_hz = options->tick_hz;
    cfg.reference_interval_s = options->reference_interval_s;
    if (options->codec) cfg.codec = protocol::CodecPolicy::parse(options->codec);
    if (options->privacy) cfg.privacy = capture::PrivacyPolicy::parse(options->privacy);
    cfg.publish_text = options->publish_text != 0;
    cfg.realtime = options->realtime != 0;
    cfg.drain_missing_on_end = options->drain_missing_on_end != 0;
    require(cfg.tick_hz > 0, "tick_hz must be positive");
    require(cfg.reference_interval_s >= 0, "reference_interval_s must be >= 0");

    const std::filesystem::path script_path = options->script_path;
    const auto script = capture::load_session_script(script_path);
    const auto docs = options->docs_dir ? std::filesystem::path(options->docs_dir)
                                        : default_docs_dir(script_path);
    capture::HttpRelayClient client(options->server_url);
    const auto stats = capture::run_session(script, docs, client, cfg);

    nlohmann::ordered_json j;
    j["session"] = stats.session_id;
    j["ticks"] = stats.ticks;
    j["tiles_uploaded"] = stats.tiles_uploaded;
    j["text_runs_published"] = stats.text_runs_published;
    j["requests"] = stats.requests;
    j["body_bytes"] = stats.body_bytes;
    j["duration_ms"] = stats.duration_ms;
    if (out_json) *out_json = dup_string(j.dump(2));
  });
}

tc_status tc_bench_generate(uint64_t seed, const char* out_dir) {
  return guarded([&] {
    require(out_dir != nullptr, "out_dir must not be NULL");
    bench::write_benchmark_assets(bench::generate_benchmark_assets(seed), out_dir);
  });
}

void tc_bench_options_init(tc_bench_options* options) {
  if (!options) return;
  const bench::BenchOptions d;
  *options = tc_bench_options{"tiled",
                              nullptr,
                              nullptr,
                              nullptr,
                              d.viewers,
                              d.jpeg_quality,
                              d.publisher.tick_hz,
                              d.publisher.reference_interval_s,
                              nullptr,
                              d.header_bytes};
}

tc_status tc_bench_run(const tc_bench_options* options, char** out_json) {
  return guarded([&] {
    require(options != nullptr && options->script_path, "script_path required");
    bench::BenchOptions b;
    b.viewers = options->viewers;
    b.jpeg_quality = options->jpeg_quality;
    b.header_bytes = options->header_bytes;
    b.publisher.tick_hz = options->tick_hz;
    b.publisher.reference_interval_s = options->reference_interval_s;
    if (options->codec) b.publisher.codec = protocol::CodecPolicy::parse(options->codec);
    require(b.viewers >= 0, "viewers must be >= 0");
    require(b.jpeg_quality >= 1 && b.jpeg_quality <= 100, "jpeg_quality must be in 1..100");
    require(b.publisher.tick_hz > 0, "tick_hz must be positive");

    const std::filesystem::path script_path = options->script_path;
    const auto script = capture::load_session_script(script_path);
    const auto docs = options->docs_dir ? std::filesystem::path(options->docs_dir)
                                        : default_docs_dir(script_path);
    const auto mode = bench::parse_bench_mode(options->mode ? options->mode : "tiled");
    const auto report =
        mode == bench::BenchMode::tiled
            ? bench::measure_tiled(script, docs, options->server_url ? options->server_url : "", b)
            : bench::measure_fullframe(script, docs, b);
    if (out_json) *out_json = dup_string(bench::report_to_json(report));
  });
}

}  // extern "C"
