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

#include "relay/config.hpp"

#include <charconv>
#include <cstdlib>

#include "capture/page_document.hpp"
#include "core/error.hpp"
#include "protocol/json_fields.hpp"

namespace tilecast::relay {

namespace {

template <typename T>
T parse_number(const char* name, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::invalid_argument,
                std::string(name) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

void check(const RelayConfig& c) {
  if (c.port < 0 || c.port > 65535) throw Error(ErrorCode::invalid_argument, "port out of range");
  if (c.max_sessions == 0) throw Error(ErrorCode::invalid_argument, "max_sessions must be > 0");
  if (c.long_poll_cap_ms < 0) {
    throw Error(ErrorCode::invalid_argument, "long_poll_cap_ms must be >= 0");
  }
  if (c.worker_threads < 2) throw Error(ErrorCode::invalid_argument, "worker_threads must be >= 2");
}

}  // namespace

RelayConfig load_relay_config(const std::filesystem::path& path) {
  using protocol::detail::field;
  const auto j = protocol::detail::parse_json(capture::read_file(path));
  if (!j.is_object()) throw Error(ErrorCode::validation, "relay config must be a JSON object");
  RelayConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "listen_address") {
      c.listen_address = field<std::string>(j, "listen_address");
    } else if (key == "port") {
      c.port = field<int>(j, "port");
    } else if (key == "max_sessions") {
      c.max_sessions = field<std::size_t>(j, "max_sessions");
    } else if (key == "long_poll_cap_ms") {
      c.long_poll_cap_ms = field<std::int64_t>(j, "long_poll_cap_ms");
    } else if (key == "storage_root") {
      c.storage_root = field<std::string>(j, "storage_root");
    } else if (key == "viewer_root") {
      c.viewer_root = field<std::string>(j, "viewer_root");
    } else if (key == "worker_threads") {
      c.worker_threads = field<std::size_t>(j, "worker_threads");
    } else if (key == "recording_cache") {
      c.recording_cache = field<std::size_t>(j, "recording_cache");
    } else {
      throw Error(ErrorCode::validation, "unknown relay config key '" + key + "'");
    }
  }
  check(c);
  return c;
}

RelayConfig apply_env_overrides(RelayConfig c, const EnvLookup& lookup) {
  if (const char* v = lookup("TILECAST_LISTEN")) c.listen_address = v;
  if (const char* v = lookup("TILECAST_PORT")) c.port = parse_number<int>("TILECAST_PORT", v);
  if (const char* v = lookup("TILECAST_MAX_SESSIONS")) {
    c.max_sessions = parse_number<std::size_t>("TILECAST_MAX_SESSIONS", v);
  }
  if (const char* v = lookup("TILECAST_LONG_POLL_CAP_MS")) {
    c.long_poll_cap_ms = parse_number<std::int64_t>("TILECAST_LONG_POLL_CAP_MS", v);
  }
  if (const char* v = lookup("TILECAST_STORAGE_ROOT")) c.storage_root = v;
  if (const char* v = lookup("TILECAST_VIEWER_ROOT")) c.viewer_root = v;
  if (const char* v = lookup("TILECAST_WORKER_THREADS")) {
    c.worker_threads = parse_number<std::size_t>("TILECAST_WORKER_THREADS", v);
  }
  check(c);
  return c;
}

RelayConfig resolve_relay_config(const std::filesystem::path& path) {
  RelayConfig c = path.empty() ? RelayConfig{} : load_relay_config(path);
  return apply_env_overrides(std::move(c), [](const char* name) { return std::getenv(name); });
}

}  // namespace tilecast::relay
