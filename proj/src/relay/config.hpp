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

namespace tilecast::relay {

struct RelayConfig {
  std::string listen_address = "127.0.0.1";
  int port = 8080;
  std::size_t max_sessions = 64;
  // Upper bound on a single long-poll wait.
  std::int64_t long_poll_cap_ms = 30000;
  // Directory for recordings; empty keeps everything in memory.
  std::string storage_root;
  // Static viewer bundle served under /viewer/; empty disables it.
  std::string viewer_root;
  std::size_t worker_threads = 64;
  // Ended sessions kept loaded after a read from storage.
  std::size_t recording_cache = 8;
};

using EnvLookup = std::function<const char*(const char*)>;

// JSON file with the RelayConfig field names as keys; unknown keys are
// rejected so typos surface.
RelayConfig load_relay_config(const std::filesystem::path& path);

// TILECAST_LISTEN, TILECAST_PORT, TILECAST_MAX_SESSIONS,
// TILECAST_LONG_POLL_CAP_MS, TILECAST_STORAGE_ROOT, TILECAST_VIEWER_ROOT,
// TILECAST_WORKER_THREADS.
RelayConfig apply_env_overrides(RelayConfig config, const EnvLookup& lookup);

// File (if given) then process environment.
RelayConfig resolve_relay_config(const std::filesystem::path& path);

}  // namespace tilecast::relay
