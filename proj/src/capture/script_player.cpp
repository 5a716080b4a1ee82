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

#include "capture/script_player.hpp"

#include <cmath>

#include "capture/capture.hpp"
#include "core/error.hpp"

namespace tilecast::capture {

DocumentSet load_documents(const SessionScript& script, const std::filesystem::path& docs_dir) {
  DocumentSet docs;
  for (const auto& id : script.document_ids()) {
    docs.emplace(id, load_page_document(docs_dir / (id + ".json")));
  }
  return docs;
}

std::int64_t tick_time_ms(std::uint64_t k, double tick_hz) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(k) * 1000.0 / tick_hz + 1e-9));
}

std::uint64_t tick_count(std::int64_t duration_ms, double tick_hz) {
  if (tick_hz <= 0) throw Error(ErrorCode::invalid_argument, "tick rate must be positive");
  std::uint64_t n = 0;
  while (tick_time_ms(n, tick_hz) < duration_ms) ++n;
  return n;
}

ScriptPlayer::ScriptPlayer(SessionScript script, DocumentSet documents,
                           std::filesystem::path docs_dir, std::int64_t default_viewport_width,
                           std::int64_t default_viewport_height)
    : script_(std::move(script)), documents_(std::move(documents)), docs_dir_(std::move(docs_dir)) {
  validate_script(script_);
  for (const auto& id : script_.document_ids()) {
    if (!documents_.contains(id)) {
      throw Error(ErrorCode::load, "script navigates to unknown document '" + id + "'");
    }
  }
  viewport_.viewport_width = default_viewport_width;
  viewport_.viewport_height = default_viewport_height;
  for (const auto& e : script_.events) {
    if (const auto* c = std::get_if<CursorEvent>(&e.action)) cursor_keys_.emplace_back(e.t_ms, *c);
  }
}

protocol::CursorState ScriptPlayer::cursor_at(std::int64_t t) const {
  protocol::CursorState state;
  // Last keyframe at or before t.
  std::size_t i = 0;
  bool found = false;
  for (std::size_t k = 0; k < cursor_keys_.size() && cursor_keys_[k].first <= t; ++k) {
    i = k;
    found = true;
  }
  if (!found) return state;
  const auto& [t0, a] = cursor_keys_[i];
  state.shape = a.shape;
  state.x = a.x;
  state.y = a.y;
  if (i + 1 < cursor_keys_.size()) {
    const auto& [t1, b] = cursor_keys_[i + 1];
    if (t1 > t0) {
      const double f = static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
      state.x = std::llround(static_cast<double>(a.x) + f * static_cast<double>(b.x - a.x));
      state.y = std::llround(static_cast<double>(a.y) + f * static_cast<double>(b.y - a.y));
    }
  }
  return state;
}

protocol::Raster ScriptPlayer::load_patch(const MutateEvent& m) {
  if (m.patch_file.empty()) return protocol::Raster(m.width, m.height, m.fill);
  auto it = patch_cache_.find(m.patch_file);
  if (it == patch_cache_.end()) {
    it = patch_cache_.emplace(m.patch_file, read_png_file(docs_dir_ / m.patch_file)).first;
  }
  return it->second;
}

Frame ScriptPlayer::advance_to(std::int64_t t) {
  if (t < last_t_) throw Error(ErrorCode::invalid_argument, "script time went backwards");
  last_t_ = t;
  Frame frame;
  for (; next_event_ < script_.events.size() && script_.events[next_event_].t_ms <= t;
       ++next_event_) {
    const auto& e = script_.events[next_event_];
    const std::string where = "event at t_ms=" + std::to_string(e.t_ms) + ": ";
    if (const auto* nav = std::get_if<NavigateEvent>(&e.action)) {
      current_id_ = nav->document_id;
      const auto& doc = documents_.at(current_id_);
      if (nav->viewport_width) viewport_.viewport_width = *nav->viewport_width;
      if (nav->viewport_height) viewport_.viewport_height = *nav->viewport_height;
      viewport_.scrollable_width = doc.raster.width;
      viewport_.scrollable_height = doc.raster.height;
      viewport_.scroll_x = 0;
      viewport_.scroll_y = 0;
      frame.navigated = true;
    } else if (const auto* s = std::get_if<ScrollEvent>(&e.action)) {
      if (s->x < 0 || s->y < 0 || s->x > viewport_.max_scroll_x() ||
          s->y > viewport_.max_scroll_y()) {
        throw Error(ErrorCode::validation,
                    where + "scroll (" + std::to_string(s->x) + "," + std::to_string(s->y) +
                        ") outside [0," + std::to_string(viewport_.max_scroll_x()) + "]x[0," +
                        std::to_string(viewport_.max_scroll_y()) + "]");
      }
      viewport_.scroll_x = s->x;
      viewport_.scroll_y = s->y;
    } else if (const auto* m = std::get_if<MutateEvent>(&e.action)) {
      const auto patch = load_patch(*m);
      apply_mutation_in_place(documents_.at(current_id_), m->x, m->y, patch);
      if (!patch.empty()) frame.mutations.push_back({current_id_, m->x, m->y, patch.width, patch.height});
    }
  }
  frame.document_id = current_id_;
  frame.document = &documents_.at(current_id_);
  frame.viewport = viewport_;
  frame.cursor = cursor_at(t);
  return frame;
}

}  // namespace tilecast::capture
