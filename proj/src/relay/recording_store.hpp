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

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "relay/recording.hpp"
#include "relay/tile_store.hpp"
#include "text/text_index.hpp"

namespace tilecast::relay {

// Everything an ended session needs to be replayed and searched.
struct ArchivedSession {
  std::string id;
  SessionRecording recording;
  std::unordered_map<protocol::TileSignature, TilePtr> tiles;
  std::vector<text::IndexedRun> text;
};

// On-disk layout, one directory per session:
//   <root>/<id>/recording.json   {"id", "duration_ms", "count"}
//   <root>/<id>/updates.jsonl    "<wall_ms> <UpdateMessage json>" per line
//   <root>/<id>/tiles/<sig>.png|.jpg
//   <root>/<id>/tokens.jsonl     one captured text run per line
class RecordingStore {
 public:
  explicit RecordingStore(std::filesystem::path root);

  // Written to a temporary directory and renamed into place.
  void write(const ArchivedSession& session) const;
  bool exists(const std::string& id) const;
  // Throws Error(not_found) if absent, Error(parse/validation) if corrupt.
  ArchivedSession read(const std::string& id) const;
  std::vector<text::IndexedRun> read_text(const std::string& id) const;
  std::vector<std::string> list() const;

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

}  // namespace tilecast::relay
