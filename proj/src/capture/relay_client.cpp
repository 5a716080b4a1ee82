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

#include "capture/relay_client.hpp"

#include <zlib.h>

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "core/error.hpp"

namespace tilecast::capture {

namespace {

ErrorCode code_from_name(const std::string& name) {
  for (int c = static_cast<int>(ErrorCode::invalid_argument);
       c <= static_cast<int>(ErrorCode::io); ++c) {
    if (name == error_code_name(static_cast<ErrorCode>(c))) return static_cast<ErrorCode>(c);
  }
  return ErrorCode::transport;
}

[[noreturn]] void throw_response_error(const httplib::Response& res) {
  std::string name;
  std::string message = "HTTP " + std::to_string(res.status);
  std::uint64_t expected = 0;
  try {
    const auto j = nlohmann::json::parse(res.body);
    name = j.value("error", "");
    message = j.value("message", message);
    expected = j.value("expected", std::uint64_t{0});
  } catch (const std::exception&) {
  }
  if (name == "sequence") throw SequenceError(expected, 0);
  if (name.empty()) {
    throw Error(res.status == 404 ? ErrorCode::not_found : ErrorCode::transport,
                message + (res.body.empty() ? "" : ": " + res.body));
  }
  throw Error(code_from_name(name), message);
}

std::string session_path(const std::string& session, const char* suffix) {
  return "/api/session/" + session + suffix;
}

}  // namespace

std::string gzip_compress(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorCode::codec, "deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(ErrorCode::codec, "gzip compression failed");
  return out;
}

HttpRelayClient::HttpRelayClient(const std::string& base_url, RetryPolicy retry,
                                 bool compress_json)
    : client_(std::make_unique<httplib::Client>(base_url)),
      retry_(retry),
      compress_json_(compress_json) {
  if (!client_->is_valid()) throw Error(ErrorCode::invalid_argument, "bad relay URL " + base_url);
  client_->set_keep_alive(true);
  client_->set_tcp_nodelay(true);
  client_->set_connection_timeout(std::chrono::seconds(2));
  client_->set_read_timeout(std::chrono::seconds(15));
  client_->set_write_timeout(std::chrono::seconds(15));
}

HttpRelayClient::~HttpRelayClient() = default;

namespace {

// Sends one publisher request, retrying with exponential backoff while the
// relay is unreachable or answers 5xx. Other responses are returned as-is.
template <typename Send>
httplib::Result send_with_retry(const RetryPolicy& policy, relay::TrafficLog& traffic,
                                std::size_t body_size, bool& retried, Send&& send) {
  std::int64_t backoff = policy.initial_backoff_ms;
  std::string last_error = "no attempt made";
  for (int attempt = 1; attempt <= std::max(1, policy.max_attempts); ++attempt) {
    if (attempt > 1) {
      retried = true;
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff = std::min(backoff * 2, policy.max_backoff_ms);
    }
    httplib::Result res = send();
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    ++traffic.requests;
    traffic.body_bytes += body_size;
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    return res;
  }
  throw Error(ErrorCode::transport, "relay unreachable after " +
                                        std::to_string(std::max(1, policy.max_attempts)) +
                                        " attempts: " + last_error);
}

}  // namespace

std::string HttpRelayClient::create_session() {
  bool retried = false;
  auto res = send_with_retry(retry_, traffic_, 0, retried, [&] {
    return client_->Post("/api/session", "", "application/json");
  });
  if (res->status != 200) throw_response_error(*res);
  return nlohmann::json::parse(res->body).at("id").get<std::string>();
}

relay::Ack HttpRelayClient::post_update(const std::string& session,
                                        const protocol::UpdateMessage& update) {
  std::string body = protocol::serialize_update(update);
  httplib::Headers headers;
  if (compress_json_) {
    body = gzip_compress(body);
    headers.emplace("Content-Encoding", "gzip");
  }
  bool retried = false;
  auto res = send_with_retry(retry_, traffic_, body.size(), retried, [&] {
    return client_->Post(session_path(session, "/update"), headers, body, "application/json");
  });
  if (res->status == 200) return relay::ack_from_json(res->body);
  try {
    throw_response_error(*res);
  } catch (const SequenceError& e) {
    // An earlier attempt landed but its response was lost.
    if (retried && e.expected() == update.seq + 1) return relay::Ack{};
    throw SequenceError(e.expected(), update.seq);
  }
}

void HttpRelayClient::put_tile(const std::string& session, const protocol::TileRecord& record) {
  httplib::Headers headers{{"X-Tile-Width", std::to_string(record.width)},
                           {"X-Tile-Height", std::to_string(record.height)}};
  const std::string path = session_path(session, "/tile/") + record.signature.hex();
  const std::string body(record.bytes.begin(), record.bytes.end());
  // One attempt: a failed upload stays out of the SentSet and is retried on
  // a later tick.
  auto res = client_->Put(path, headers, body, protocol::codec_mime_type(record.codec));
  if (!res) {
    throw Error(ErrorCode::transport, "tile upload failed: " + httplib::to_string(res.error()));
  }
  ++traffic_.requests;
  traffic_.body_bytes += body.size();
  if (res->status != 200 && res->status != 201 && res->status != 204) throw_response_error(*res);
}

void HttpRelayClient::post_text(const std::string& session, std::uint64_t seq,
                                const std::vector<text::TextRun>& runs) {
  std::string body = relay::text_post_to_json(seq, runs);
  httplib::Headers headers;
  if (compress_json_) {
    body = gzip_compress(body);
    headers.emplace("Content-Encoding", "gzip");
  }
  bool retried = false;
  auto res = send_with_retry(retry_, traffic_, body.size(), retried, [&] {
    return client_->Post(session_path(session, "/text"), headers, body, "application/json");
  });
  if (res->status != 200) throw_response_error(*res);
}

relay::RecordingSummary HttpRelayClient::end_session(const std::string& session) {
  bool retried = false;
  auto res = send_with_retry(retry_, traffic_, 0, retried, [&] {
    return client_->Post(session_path(session, "/end"), "", "application/json");
  });
  if (res->status != 200) {
    try {
      throw_response_error(*res);
    } catch (const Error& e) {
      // Retried end whose first attempt already ended the session.
      if (!(retried && e.code() == ErrorCode::conflict)) throw;
    }
  }
  relay::RecordingSummary summary;
  summary.id = session;
  if (res->status == 200) {
    const auto j = nlohmann::json::parse(res->body);
    summary.updates = j.value("updates", std::uint64_t{0});
    summary.duration_ms = j.value("duration_ms", std::int64_t{0});
  }
  return summary;
}

StateResponse HttpRelayClient::get_state(const std::string& session, std::uint64_t since,
                                         std::int64_t wait_ms) {
  client_->set_read_timeout(std::chrono::milliseconds(std::max<std::int64_t>(wait_ms, 0) + 15000));
  const std::string path = session_path(session, "/state") + "?since=" + std::to_string(since) +
                           "&wait=" + std::to_string(wait_ms);
  auto res = client_->Get(path);
  if (!res) throw Error(ErrorCode::transport, "state poll failed: " + httplib::to_string(res.error()));
  ++get_requests_;
  received_bytes_ += res->body.size();
  if (res->status == 204) return {std::nullopt, res->get_header_value("X-Tilecast-Status")};
  if (res->status != 200) throw_response_error(*res);
  return {protocol::deserialize_update(res->body), "ok"};
}

std::optional<protocol::TileRecord> HttpRelayClient::get_tile(const std::string& session,
                                                              const protocol::TileSignature& sig) {
  auto res = client_->Get(session_path(session, "/tile/") + sig.hex());
  if (!res) throw Error(ErrorCode::transport, "tile fetch failed: " + httplib::to_string(res.error()));
  ++get_requests_;
  received_bytes_ += res->body.size();
  if (res->status == 404) return std::nullopt;
  if (res->status != 200) throw_response_error(*res);
  protocol::TileRecord record;
  record.signature = sig;
  record.bytes.assign(res->body.begin(), res->body.end());
  const auto info = protocol::probe_image(record.bytes);
  record.codec = info.codec;
  record.width = info.width;
  record.height = info.height;
  return record;
}

relay::RecordingManifest HttpRelayClient::get_recording(const std::string& session) {
  auto res = client_->Get(session_path(session, "/recording"));
  if (!res) throw Error(ErrorCode::transport, "recording fetch failed: " + httplib::to_string(res.error()));
  ++get_requests_;
  received_bytes_ += res->body.size();
  if (res->status != 200) throw_response_error(*res);
  return relay::manifest_from_json(res->body);
}

StateResponse HttpRelayClient::get_recording_state(const std::string& session,
                                                   std::int64_t at_ms) {
  auto res = client_->Get(session_path(session, "/recording/state") + "?at=" + std::to_string(at_ms));
  if (!res) throw Error(ErrorCode::transport, "recording seek failed: " + httplib::to_string(res.error()));
  ++get_requests_;
  received_bytes_ += res->body.size();
  if (res->status == 204) return {std::nullopt, res->get_header_value("X-Tilecast-Status")};
  if (res->status != 200) throw_response_error(*res);
  return {protocol::deserialize_update(res->body), "ok"};
}

std::vector<text::SearchHit> HttpRelayClient::search(const std::string& query, std::size_t limit) {
  httplib::Params params{{"q", query}, {"limit", std::to_string(limit)}};
  auto res = client_->Get("/api/search", params, httplib::Headers{});
  if (!res) throw Error(ErrorCode::transport, "search failed: " + httplib::to_string(res.error()));
  ++get_requests_;
  received_bytes_ += res->body.size();
  if (res->status != 200) throw_response_error(*res);
  return relay::hits_from_json(res->body);
}

relay::TrafficLog HttpRelayClient::session_traffic(const std::string& session) {
  auto res = client_->Get(session_path(session, "/stats"));
  if (!res) throw Error(ErrorCode::transport, "stats fetch failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw_response_error(*res);
  const auto j = nlohmann::json::parse(res->body);
  return {j.at("requests").get<std::uint64_t>(), j.at("body_bytes").get<std::uint64_t>()};
}

}  // namespace tilecast::capture
