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

#include "relay/http_server.hpp"

#include <charconv>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "core/error.hpp"

namespace tilecast::relay {

namespace {

constexpr const char* kJson = "application/json";
constexpr std::size_t kMaxBody = 64u << 20;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_geometry:
    case ErrorCode::invalid_pixel_buffer:
    case ErrorCode::codec:
    case ErrorCode::parse:
    case ErrorCode::validation:
      return 400;
    case ErrorCode::not_found:
      return 404;
    case ErrorCode::conflict:
    case ErrorCode::sequence:
    case ErrorCode::integrity:
      return 409;
    case ErrorCode::capacity:
      return 429;
    default:
      return 500;
  }
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message,
                std::optional<std::uint64_t> expected = std::nullopt) {
  nlohmann::ordered_json j;
  j["error"] = error_code_name(code);
  j["message"] = message;
  if (expected) j["expected"] = *expected;
  res.status = http_status(code);
  res.set_content(j.dump(), kJson);
}

template <typename T>
T query_number(const httplib::Request& req, const char* name, T fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string v = req.get_param_value(name);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::invalid_argument,
                std::string("query parameter '") + name + "' must be an integer, got '" + v + "'");
  }
  return out;
}

// Bytes as they crossed the wire, before any Content-Encoding was undone.
std::uint64_t wire_body_bytes(const httplib::Request& req) {
  const std::string v = req.get_header_value("Content-Length");
  std::uint64_t n = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (v.empty() || ec != std::errc{}) return req.body.size();
  return n;
}

void send_update(httplib::Response& res, const StateResult& state) {
  if (state.update) {
    res.set_content(protocol::serialize_update(*state.update), kJson);
  } else {
    res.status = 204;
    res.set_header("X-Tilecast-Status", state.status);
  }
}

std::optional<int> header_int(const httplib::Request& req, const char* name) {
  if (!req.has_header(name)) return std::nullopt;
  const std::string v = req.get_header_value(name);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::invalid_argument, std::string(name) + " header must be an integer");
  }
  return n;
}

protocol::TileRecord tile_from_request(const httplib::Request& req,
                                       const protocol::TileSignature& sig) {
  protocol::TileRecord record;
  record.signature = sig;
  record.bytes.assign(req.body.begin(), req.body.end());
  const auto info = protocol::probe_image(record.bytes);
  record.codec = info.codec;
  record.width = info.width;
  record.height = info.height;
  if (record.width < 1 || record.width > protocol::kTileSize || record.height < 1 ||
      record.height > protocol::kTileSize) {
    throw Error(ErrorCode::invalid_geometry, "tile is " + std::to_string(record.width) + "x" +
                                                 std::to_string(record.height) +
                                                 ", outside 1..256");
  }
  const auto w = header_int(req, "X-Tile-Width");
  const auto h = header_int(req, "X-Tile-Height");
  if ((w && *w != record.width) || (h && *h != record.height)) {
    throw Error(ErrorCode::validation, "X-Tile-Width/Height do not match the image");
  }
  if (req.has_header("Content-Type")) {
    const std::string declared = req.get_header_value("Content-Type");
    if (declared != "application/octet-stream" &&
        declared != protocol::codec_mime_type(record.codec)) {
      throw Error(ErrorCode::validation, "Content-Type " + declared + " does not match a " +
                                             protocol::codec_name(record.codec) + " payload");
    }
  }
  return record;
}

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
  std::thread thread;
  int port = 0;
};

HttpServer::HttpServer(std::shared_ptr<Relay> relay)
    : relay_(std::move(relay)), impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;
  Relay& r = *relay_;
  const std::size_t workers = r.config().worker_threads;
  srv.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
  srv.set_payload_max_length(kMaxBody);
  srv.set_tcp_nodelay(true);
  // Idle keep-alive connections delay stop() by up to this many seconds.
  srv.set_keep_alive_timeout(2);
  srv.set_keep_alive_max_count(100000);

  // Every handler runs inside this wrapper so library errors map to JSON.
  auto guarded = [](auto handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const SequenceError& e) {
        send_error(res, e.code(), e.what(), e.expected());
      } catch (const Error& e) {
        send_error(res, e.code(), e.what());
      } catch (const std::exception& e) {
        send_error(res, ErrorCode::io, e.what());
      }
    };
  };

  srv.Post("/api/session", guarded([&r](const httplib::Request& req, httplib::Response& res) {
             const std::string id = r.create_session();
             r.log_request(id, wire_body_bytes(req));
             res.set_content(nlohmann::json{{"id", id}}.dump(), kJson);
           }));

  srv.Post(R"(/api/session/([a-z0-9]+)/update)",
           guarded([&r](const httplib::Request& req, httplib::Response& res) {
             const std::string id = req.matches[1];
             r.log_request(id, wire_body_bytes(req));
             const Ack ack = r.ingest_update(id, protocol::deserialize_update(req.body));
             res.set_content(ack_to_json(ack), kJson);
           }));

  srv.Put(R"(/api/session/([a-z0-9]+)/tile/([0-9a-fA-F]{32}))",
          guarded([&r](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.matches[1];
            r.log_request(id, wire_body_bytes(req));
            const auto sig = protocol::TileSignature::from_hex(req.matches[2].str());
            const auto result = r.put_tile(id, tile_from_request(req, *sig));
            res.status = result == TileStore::PutResult::stored ? 201 : 200;
          }));

  srv.Get(R"(/api/session/([a-z0-9]+)/tile/([0-9a-fA-F]{32}))",
          guarded([&r](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.matches[1];
            const auto sig = protocol::TileSignature::from_hex(req.matches[2].str());
            const auto tile = r.get_tile(id, *sig);
            const std::string etag = "\"" + sig->hex() + "\"";
            res.set_header("ETag", etag);
            res.set_header("Cache-Control", "public, max-age=31536000, immutable");
            if (req.get_header_value("If-None-Match") == etag) {
              res.status = 304;
              return;
            }
            res.set_content(std::string(tile->bytes.begin(), tile->bytes.end()),
                            protocol::codec_mime_type(tile->codec));
          }));

  srv.Get(R"(/api/session/([a-z0-9]+)/state)",
          guarded([&r](const httplib::Request& req, httplib::Response& res) {
            const auto since = query_number<std::uint64_t>(req, "since", 0);
            const auto wait = query_number<std::int64_t>(req, "wait", 0);
            send_update(res, r.get_state(req.matches[1], since, wait));
          }));

  srv.Post(R"(/api/session/([a-z0-9]+)/end)",
           guarded([&r](const httplib::Request& req, httplib::Response& res) {
             const std::string id = req.matches[1];
             r.log_request(id, wire_body_bytes(req));
             const auto summary = r.end_session(id);
             nlohmann::ordered_json j;
             j["id"] = summary.id;
             j["updates"] = summary.updates;
             j["duration_ms"] = summary.duration_ms;
             res.set_content(j.dump(), kJson);
           }));

  srv.Get(R"(/api/session/([a-z0-9]+)/recording)",
          guarded([&r](const httplib::Request& req, httplib::Response& res) {
            res.set_content(manifest_to_json(r.get_recording(req.matches[1])), kJson);
          }));

  srv.Get(R"(/api/session/([a-z0-9]+)/recording/state)",
          guarded([&r](const httplib::Request& req, httplib::Response& res) {
            if (!req.has_param("at")) {
              throw Error(ErrorCode::invalid_argument, "missing query parameter 'at'");
            }
            const auto at = query_number<std::int64_t>(req, "at", 0);
            const auto update = r.get_recording_state(req.matches[1], at);
            send_update(res, update ? StateResult{update, "ok"} : StateResult{{}, "not-ready"});
          }));

  srv.Post(R"(/api/session/([a-z0-9]+)/text)",
           guarded([&r](const httplib::Request& req, httplib::Response& res) {
             const std::string id = req.matches[1];
             r.log_request(id, wire_body_bytes(req));
             const auto [seq, runs] = text_post_from_json(req.body);
             const std::size_t n = r.index_text(id, seq, runs);
             res.set_content(nlohmann::json{{"indexed", n}}.dump(), kJson);
           }));

  srv.Get(R"(/api/session/([a-z0-9]+)/stats)",
          guarded([&r](const httplib::Request& req, httplib::Response& res) {
            const auto t = r.traffic(req.matches[1]);
            nlohmann::ordered_json j;
            j["requests"] = t.requests;
            j["body_bytes"] = t.body_bytes;
            res.set_content(j.dump(), kJson);
          }));

  srv.Get("/api/search", guarded([&r](const httplib::Request& req, httplib::Response& res) {
            const auto limit = query_number<std::size_t>(req, "limit", 50);
            res.set_content(hits_to_json(r.search(req.get_param_value("q"), limit)), kJson);
          }));

  srv.Get("/api/health", [&r](const httplib::Request&, httplib::Response& res) {
    res.set_content(nlohmann::json{{"ok", true}, {"live_sessions", r.live_sessions()}}.dump(),
                    kJson);
  });

  if (!r.config().viewer_root.empty()) {
    if (!srv.set_mount_point("/viewer", r.config().viewer_root)) {
      throw Error(ErrorCode::invalid_argument,
                  "viewer_root '" + r.config().viewer_root + "' is not a directory");
    }
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    impl_->port = srv.bind_to_any_port(host);
    if (impl_->port < 0) throw Error(ErrorCode::io, "cannot bind " + host);
  } else {
    if (!srv.bind_to_port(host, port)) {
      throw Error(ErrorCode::io, "cannot bind " + host + ":" + std::to_string(port));
    }
    impl_->port = port;
  }
  return impl_->port;
}

void HttpServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  // Release blocked long-polls first so worker threads can be joined.
  relay_->shutdown();
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int HttpServer::port() const { return impl_->port; }

}  // namespace tilecast::relay
