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

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "relay/config.hpp"
#include "relay/recording.hpp"
#include "relay/recording_store.hpp"
#include "relay/tile_store.hpp"
#include "text/text_index.hpp"

namespace tilecast::relay {

struct StateResult {
  std::optional<protocol::UpdateMessage> update;
  // "ok", "timeout", "ended" or "not-ready".
  std::string status;
};

// Session state machine of the relay, independent of HTTP.
//
// Invariants per session: recording seq values are exactly 1..N; latest is
// the seq-N update; timestamps never decrease. A live session holds one
// TileStore reference per signature it uploaded or referenced.
class Relay {
 public:
  explicit Relay(RelayConfig config);
  ~Relay();

  Relay(const Relay&) = delete;
  Relay& operator=(const Relay&) = delete;

  std::string create_session();
  // Ack.missing lists tile_map signatures with no payload in the store.
  Ack ingest_update(const std::string& id, protocol::UpdateMessage update);
  TileStore::PutResult put_tile(const std::string& id, const protocol::TileRecord& record);
  RecordingSummary end_session(const std::string& id);

  // Long-poll: blocks up to min(wait_ms, long_poll_cap_ms) for seq > since.
  StateResult get_state(const std::string& id, std::uint64_t since, std::int64_t wait_ms);
  // Throws Error(not_found) unless the session uploaded or referenced sig.
  TilePtr get_tile(const std::string& id, const protocol::TileSignature& sig);
  RecordingManifest get_recording(const std::string& id);
  // nullopt before the first update.
  std::optional<protocol::UpdateMessage> get_recording_state(const std::string& id,
                                                             std::int64_t at_ms);

  // seq must name an existing update of the session.
  std::size_t index_text(const std::string& id, std::uint64_t seq,
                         const std::vector<text::TextRun>& runs);
  std::vector<text::SearchHit> search(std::string_view query, std::size_t limit) const;

  void log_request(const std::string& id, std::uint64_t body_bytes);
  TrafficLog traffic(const std::string& id);

  bool has_session(const std::string& id);
  std::size_t live_sessions() const;
  const TileStore& tiles() const { return tiles_; }
  const RelayConfig& config() const { return config_; }

  // Wakes every blocked long-poll; later polls return without waiting.
  void shutdown();

 private:
  struct Session {
    std::string id;
    SessionStatus status = SessionStatus::live;
    SessionRecording recording;
    std::unordered_set<protocol::TileSignature> held;
    TrafficLog traffic;
    std::mutex mutex;
    std::condition_variable changed;
  };
  using SessionPtr = std::shared_ptr<Session>;
  using ArchivePtr = std::shared_ptr<const ArchivedSession>;

  SessionPtr find_session(const std::string& id) const;
  SessionPtr require_session(const std::string& id) const;
  ArchivePtr find_archive(const std::string& id);
  std::string fresh_id();

  RelayConfig config_;
  TileStore tiles_;
  text::TextIndex index_;
  std::unique_ptr<RecordingStore> storage_;

  mutable std::shared_mutex sessions_mutex_;
  std::unordered_map<std::string, SessionPtr> sessions_;
  std::size_t live_count_ = 0;
  // Traffic of sessions evicted to storage during this process lifetime.
  std::unordered_map<std::string, TrafficLog> evicted_traffic_;

  std::mutex archive_mutex_;
  std::list<std::pair<std::string, ArchivePtr>> archive_cache_;  // most recent first

  std::atomic<bool> stopping_{false};
};

}  // namespace tilecast::relay
