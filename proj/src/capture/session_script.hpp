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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "protocol/raster.hpp"
#include "protocol/update.hpp"

namespace tilecast::capture {

struct NavigateEvent {
  std::string document_id;
  // Viewport size for this visit; defaults to the previous one.
  std::optional<std::int64_t> viewport_width;
  std::optional<std::int64_t> viewport_height;

  friend bool operator==(const NavigateEvent&, const NavigateEvent&) = default;
};

struct ScrollEvent {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const ScrollEvent&, const ScrollEvent&) = default;
};

struct CursorEvent {
  std::int64_t x = 0;
  std::int64_t y = 0;
  protocol::CursorShape shape = protocol::CursorShape::default_arrow;

  friend bool operator==(const CursorEvent&, const CursorEvent&) = default;
};

// Either a PNG patch file (relative to the docs directory) or a solid fill.
struct MutateEvent {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::string patch_file;
  std::int64_t width = 0;
  std::int64_t height = 0;
  protocol::Rgba fill{0, 0, 0, 255};

  friend bool operator==(const MutateEvent&, const MutateEvent&) = default;
};

struct EndEvent {
  friend bool operator==(const EndEvent&, const EndEvent&) = default;
};

using ScriptAction = std::variant<NavigateEvent, ScrollEvent, CursorEvent, MutateEvent, EndEvent>;

struct ScriptEvent {
  std::int64_t t_ms = 0;
  ScriptAction action;

  friend bool operator==(const ScriptEvent&, const ScriptEvent&) = default;
};

struct SessionScript {
  std::vector<ScriptEvent> events;

  // Time of the end event.
  std::int64_t duration_ms() const;
  std::vector<std::string> document_ids() const;

  friend bool operator==(const SessionScript&, const SessionScript&) = default;
};

// Structural checks: non-decreasing times, navigate at t=0 first, a single
// end event last. Throws Error(validation).
void validate_script(const SessionScript& script);

// JSON lines, one event per line: {"t_ms": int, "ev": "navigate|scroll|cursor|mutate|end", ...}.
// Blank lines are skipped. Errors name the 1-based line number.
SessionScript parse_session_script(std::string_view jsonl);
SessionScript load_session_script(const std::filesystem::path& path);
std::string serialize_session_script(const SessionScript& script);

}  // namespace tilecast::capture
