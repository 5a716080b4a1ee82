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

#include "relay/recording_store.hpp"

#include <fstream>
#include <sstream>

#include "capture/page_document.hpp"
#include "core/error.hpp"
#include "protocol/json_fields.hpp"

namespace tilecast::relay {

namespace fs = std::filesystem;
using protocol::detail::field;

namespace {

bool valid_id(const std::string& id) {
  if (id.size() != 8) return false;
  for (char c : id) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
  }
  return true;
}

std::string text_line(const text::IndexedRun& r) {
  nlohmann::ordered_json j;
  j["seq"] = r.run.seq;
  j["ts_ms"] = r.timestamp_ms;
  j["url"] = r.run.url;
  j["bbox"] = {r.run.bbox.x, r.run.bbox.y, r.run.bbox.w, r.run.bbox.h};
  j["text"] = r.run.text;
  return j.dump();
}

text::IndexedRun parse_text_line(const std::string& session, std::string_view line) {
  const auto j = protocol::detail::parse_json(line);
  text::IndexedRun r;
  r.session = session;
  r.run.seq = field<std::uint64_t>(j, "seq");
  r.timestamp_ms = field<std::int64_t>(j, "ts_ms");
  r.run.url = field<std::string>(j, "url");
  const auto& b = protocol::detail::array_field(j, "bbox");
  if (b.size() != 4) throw Error(ErrorCode::validation, "bbox must have 4 entries");
  r.run.bbox = {b[0].get<std::int64_t>(), b[1].get<std::int64_t>(), b[2].get<std::int64_t>(),
                b[3].get<std::int64_t>()};
  r.run.text = field<std::string>(j, "text");
  return r;
}

template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) fn(line);
  }
}

}  // namespace

RecordingStore::RecordingStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
}

void RecordingStore::write(const ArchivedSession& s) const {
  const fs::path final_dir = root_ / s.id;
  const fs::path tmp = root_ / ("." + s.id + ".tmp");
  fs::remove_all(tmp);
  fs::create_directories(tmp / "tiles");

  {
    std::ofstream out(tmp / "updates.jsonl", std::ios::binary);
    for (const auto& r : s.recording.updates) out << recorded_update_line(r) << '\n';
    if (!out) throw Error(ErrorCode::io, "cannot write updates.jsonl for " + s.id);
  }
  {
    std::ofstream out(tmp / "tokens.jsonl", std::ios::binary);
    for (const auto& r : s.text) out << text_line(r) << '\n';
    if (!out) throw Error(ErrorCode::io, "cannot write tokens.jsonl for " + s.id);
  }
  for (const auto& [sig, tile] : s.tiles) {
    const fs::path p = tmp / "tiles" / (sig.hex() + "." + protocol::codec_extension(tile->codec));
    capture::write_file(p, std::string_view(reinterpret_cast<const char*>(tile->bytes.data()),
                                            tile->bytes.size()));
  }
  nlohmann::ordered_json meta;
  meta["id"] = s.id;
  meta["duration_ms"] = s.recording.duration_ms;
  meta["count"] = s.recording.updates.size();
  capture::write_file(tmp / "recording.json", meta.dump());

  fs::remove_all(final_dir);
  fs::rename(tmp, final_dir);
}

bool RecordingStore::exists(const std::string& id) const {
  return valid_id(id) && fs::exists(root_ / id / "recording.json");
}

ArchivedSession RecordingStore::read(const std::string& id) const {
  if (!exists(id)) throw Error(ErrorCode::not_found, "no recording for session " + id);
  const fs::path dir = root_ / id;
  ArchivedSession s;
  s.id = id;
  const auto meta = protocol::detail::parse_json(capture::read_file(dir / "recording.json"));
  s.recording.duration_ms = field<std::int64_t>(meta, "duration_ms");
  for_each_line(dir / "updates.jsonl", [&](const std::string& line) {
    s.recording.updates.push_back(parse_recorded_update_line(line));
  });

  if (fs::exists(dir / "tiles")) {
    for (const auto& entry : fs::directory_iterator(dir / "tiles")) {
      const auto sig = protocol::TileSignature::from_hex(entry.path().stem().string());
      if (!sig) continue;
      const std::string bytes = capture::read_file(entry.path());
      protocol::TileRecord record;
      record.signature = *sig;
      record.bytes.assign(bytes.begin(), bytes.end());
      const auto info = protocol::probe_image(record.bytes);
      record.codec = info.codec;
      record.width = info.width;
      record.height = info.height;
      s.tiles.emplace(*sig, std::make_shared<const protocol::TileRecord>(std::move(record)));
    }
  }
  s.text = read_text(id);
  return s;
}

std::vector<text::IndexedRun> RecordingStore::read_text(const std::string& id) const {
  std::vector<text::IndexedRun> runs;
  for_each_line(root_ / id / "tokens.jsonl",
                [&](const std::string& line) { runs.push_back(parse_text_line(id, line)); });
  return runs;
}

std::vector<std::string> RecordingStore::list() const {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(root_)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_directory() && exists(name)) ids.push_back(name);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace tilecast::relay
