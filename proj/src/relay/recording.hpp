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
#include <optional>
#include <string>
#include <vector>

#include "protocol/update.hpp"
#include "text/text_index.hpp"

namespace tilecast::relay {

enum class SessionStatus { live, ended };

const char* status_name(SessionStatus status);

struct RecordedUpdate {
  std::int64_t wall_ms = 0;  // server clock at ingest, epoch ms
  protocol::UpdateMessage update;
};

// Append-only timed log of a session's updates.
struct SessionRecording {
  std::vector<RecordedUpdate> updates;
  std::int64_t duration_ms = 0;

  // Update with the greatest timestamp <= at_ms; nullptr before the first.
  const protocol::UpdateMessage* state_at(std::int64_t at_ms) const;
};

// What GET .../recording returns: enough for a timeline without the bodies.
struct RecordingManifest {
  std::string id;
  SessionStatus status = SessionStatus::live;
  std::int64_t duration_ms = 0;
  struct Entry {
    std::uint64_t seq = 0;
    std::int64_t ts_ms = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  friend bool operator==(const RecordingManifest&, const RecordingManifest&) = default;
};

struct RecordingSummary {
  std::string id;
  std::uint64_t updates = 0;
  std::int64_t duration_ms = 0;
};

// Request-body accounting for one session, as seen by the relay.
struct TrafficLog {
  std::uint64_t requests = 0;
  std::uint64_t body_bytes = 0;
};

struct Ack {
  std::vector<protocol::TileSignature> missing;
};

// JSON bodies of the HTTP API.
std::string manifest_to_json(const RecordingManifest& m);
RecordingManifest manifest_from_json(std::string_view json);
std::string hits_to_json(const std::vector<text::SearchHit>& hits);
std::vector<text::SearchHit> hits_from_json(std::string_view json);
std::string text_post_to_json(std::uint64_t seq, const std::vector<text::TextRun>& runs);
std::pair<std::uint64_t, std::vector<text::TextRun>> text_post_from_json(std::string_view json);
std::string ack_to_json(const Ack& ack);
Ack ack_from_json(std::string_view json);

// One updates.jsonl line: "<wall_ms> <update json>".
std::string recorded_update_line(const RecordedUpdate& r);
RecordedUpdate parse_recorded_update_line(std::string_view line);

}  // namespace tilecast::relay
