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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "protocol/codec.hpp"
#include "protocol/update.hpp"
#include "relay/recording.hpp"
#include "text/text_index.hpp"

namespace httplib {
class Client;
}

namespace tilecast::capture {

// What a publisher needs from the relay. Implementations throw
// Error(transport) when the relay cannot be reached and the mapped error
// code when it answers with a failure.
class RelayTransport {
 public:
  virtual ~RelayTransport() = default;

  virtual std::string create_session() = 0;
  virtual relay::Ack post_update(const std::string& session,
                                 const protocol::UpdateMessage& update) = 0;
  virtual void put_tile(const std::string& session, const protocol::TileRecord& record) = 0;
  virtual void post_text(const std::string& session, std::uint64_t seq,
                         const std::vector<text::TextRun>& runs) = 0;
  virtual relay::RecordingSummary end_session(const std::string& session) = 0;

  // Requests that reached the relay and the body bytes they carried.
  virtual relay::TrafficLog traffic() const = 0;
};

struct RetryPolicy {
  int max_attempts = 6;
  std::int64_t initial_backoff_ms = 100;
  std::int64_t max_backoff_ms = 3200;
};

struct StateResponse {
  std::optional<protocol::UpdateMessage> update;
  // "ok", "timeout", "ended" or "not-ready".
  std::string status;
};

// HTTP client for the relay API, used by the publisher and by simulated
// viewers. JSON request bodies are gzip-encoded when compress_json is set.
class HttpRelayClient final : public RelayTransport {
 public:
  explicit HttpRelayClient(const std::string& base_url, RetryPolicy retry = {},
                           bool compress_json = true);
  ~HttpRelayClient() override;

  std::string create_session() override;
  relay::Ack post_update(const std::string& session,
                         const protocol::UpdateMessage& update) override;
  void put_tile(const std::string& session, const protocol::TileRecord& record) override;
  void post_text(const std::string& session, std::uint64_t seq,
                 const std::vector<text::TextRun>& runs) override;
  relay::RecordingSummary end_session(const std::string& session) override;
  relay::TrafficLog traffic() const override { return traffic_; }

  // Viewer side. Response body bytes are tallied in received_bytes().
  StateResponse get_state(const std::string& session, std::uint64_t since, std::int64_t wait_ms);
  std::optional<protocol::TileRecord> get_tile(const std::string& session,
                                               const protocol::TileSignature& sig);
  relay::RecordingManifest get_recording(const std::string& session);
  StateResponse get_recording_state(const std::string& session, std::int64_t at_ms);
  std::vector<text::SearchHit> search(const std::string& query, std::size_t limit = 50);
  relay::TrafficLog session_traffic(const std::string& session);

  std::uint64_t received_bytes() const { return received_bytes_; }
  std::uint64_t get_requests() const { return get_requests_; }

 private:
  std::unique_ptr<httplib::Client> client_;
  RetryPolicy retry_;
  bool compress_json_;
  relay::TrafficLog traffic_;
  std::uint64_t received_bytes_ = 0;
  std::uint64_t get_requests_ = 0;
};

std::string gzip_compress(std::string_view data);

}  // namespace tilecast::capture
