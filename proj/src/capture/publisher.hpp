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
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "capture/privacy.hpp"
#include "capture/relay_client.hpp"
#include "capture/session_script.hpp"
#include "protocol/codec.hpp"

namespace tilecast::capture {

struct PublisherConfig {
  double tick_hz = 4.0;
  // 0 disables periodic reference captures.
  double reference_interval_s = 5.0;
  protocol::CodecPolicy codec;
  PrivacyPolicy privacy = PrivacyPolicy::all();
  bool publish_text = true;
  // Pace ticks against the wall clock instead of running as fast as possible.
  bool realtime = false;
  // Before ending, upload every tile the relay still reports missing for the
  // current page, so the final state is fully resolvable.
  bool drain_missing_on_end = false;
  std::int64_t viewport_width = 1024;
  std::int64_t viewport_height = 768;

  // Ticks between reference captures (0 when disabled).
  std::uint64_t reference_every() const;
};

struct TickLog {
  std::uint64_t seq = 0;
  std::int64_t ts_ms = 0;
  bool reference = false;
  std::size_t tiles_uploaded = 0;
  std::size_t tiles_failed = 0;
  // Requests and body bytes this tick added, as counted by the transport.
  std::uint64_t requests = 0;
  std::uint64_t body_bytes = 0;
};

struct SessionStats {
  std::string session_id;
  std::uint64_t ticks = 0;
  std::uint64_t tiles_uploaded = 0;
  std::uint64_t text_runs_published = 0;
  std::uint64_t requests = 0;
  std::uint64_t body_bytes = 0;
  std::int64_t duration_ms = 0;
  std::vector<TickLog> tick_log;
  // Every acknowledged tile upload, in order.
  std::vector<protocol::TileSignature> uploads;
};

using SessionCallback = std::function<void(const std::string& session_id)>;

// Drives a scripted session against the relay: creates the session, runs the
// capture loop at the configured rate, publishes filtered text once per
// navigation and ends the session at the end event.
SessionStats run_session(const SessionScript& script, const std::filesystem::path& docs_dir,
                         RelayTransport& transport, const PublisherConfig& config,
                         const SessionCallback& on_session = {});

}  // namespace tilecast::capture
