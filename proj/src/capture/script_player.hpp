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
#include <map>
#include <string>
#include <vector>

#include "capture/page_document.hpp"
#include "capture/session_script.hpp"
#include "protocol/geometry.hpp"
#include "protocol/update.hpp"

namespace tilecast::capture {

using DocumentSet = std::map<std::string, PageDocument>;

// Loads <docs_dir>/<id>.json for every document the script navigates to.
DocumentSet load_documents(const SessionScript& script, const std::filesystem::path& docs_dir);

struct MutatedRect {
  std::string document_id;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t w = 0;
  std::int64_t h = 0;
};

// Page state at one tick.
struct Frame {
  std::string document_id;
  const PageDocument* document = nullptr;
  protocol::ViewportState viewport;
  protocol::CursorState cursor;
  // A navigate event fired since the previous frame.
  bool navigated = false;
  // Mutations applied since the previous frame, to any document.
  std::vector<MutatedRect> mutations;
};

// Tick time in ms for tick k at the given rate.
std::int64_t tick_time_ms(std::uint64_t k, double tick_hz);
// Number of ticks with tick_time_ms(k) < duration_ms.
std::uint64_t tick_count(std::int64_t duration_ms, double tick_hz);

// Replays a script over its documents on a shared clock. Scroll jumps at its
// event time; the cursor moves linearly between consecutive keyframes.
// Mutations persist in the player's copy of the document.
class ScriptPlayer {
 public:
  ScriptPlayer(SessionScript script, DocumentSet documents, std::filesystem::path docs_dir,
               std::int64_t default_viewport_width = 1024,
               std::int64_t default_viewport_height = 768);

  // Applies every event with t_ms <= t. Times must not decrease between
  // calls. Throws Error(validation) for scrolls outside the page bounds and
  // Error(mutation) for patches that do not fit.
  Frame advance_to(std::int64_t t_ms);

  const SessionScript& script() const { return script_; }
  const PageDocument& document(const std::string& id) const { return documents_.at(id); }
  std::int64_t duration_ms() const { return script_.duration_ms(); }

 private:
  protocol::CursorState cursor_at(std::int64_t t_ms) const;
  protocol::Raster load_patch(const MutateEvent& m);

  SessionScript script_;
  DocumentSet documents_;
  std::filesystem::path docs_dir_;
  std::size_t next_event_ = 0;
  std::string current_id_;
  protocol::ViewportState viewport_;
  std::int64_t last_t_ = -1;
  std::vector<std::pair<std::int64_t, CursorEvent>> cursor_keys_;
  std::map<std::string, protocol::Raster> patch_cache_;
};

}  // namespace tilecast::capture
