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

#include "relay/recording.hpp"

#include <algorithm>
#include <charconv>

#include "core/error.hpp"
#include "protocol/json_fields.hpp"

namespace tilecast::relay {

using protocol::detail::array_field;
using protocol::detail::field;

const char* status_name(SessionStatus status) {
  return status == SessionStatus::live ? "live" : "ended";
}

const protocol::UpdateMessage* SessionRecording::state_at(std::int64_t at_ms) const {
  // Timestamps are non-decreasing; take the last entry not after at_ms.
  const auto it = std::upper_bound(
      updates.begin(), updates.end(), at_ms,
      [](std::int64_t t, const RecordedUpdate& r) { return t < r.update.timestamp_ms; });
  if (it == updates.begin()) return nullptr;
  return &std::prev(it)->update;
}

std::string manifest_to_json(const RecordingManifest& m) {
  nlohmann::ordered_json j;
  j["id"] = m.id;
  j["status"] = status_name(m.status);
  j["duration_ms"] = m.duration_ms;
  j["count"] = m.entries.size();
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : m.entries) entries.push_back({{"seq", e.seq}, {"ts_ms", e.ts_ms}});
  j["updates"] = std::move(entries);
  return j.dump();
}

RecordingManifest manifest_from_json(std::string_view json) {
  const auto j = protocol::detail::parse_json(json);
  RecordingManifest m;
  m.id = field<std::string>(j, "id");
  m.status = field<std::string>(j, "status") == "ended" ? SessionStatus::ended : SessionStatus::live;
  m.duration_ms = field<std::int64_t>(j, "duration_ms");
  for (const auto& e : array_field(j, "updates")) {
    m.entries.push_back({field<std::uint64_t>(e, "seq"), field<std::int64_t>(e, "ts_ms")});
  }
  return m;
}

std::string hits_to_json(const std::vector<text::SearchHit>& hits) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& h : hits) {
    nlohmann::ordered_json e;
    e["session"] = h.session;
    e["seq"] = h.seq;
    e["ts_ms"] = h.timestamp_ms;
    e["url"] = h.url;
    e["bbox"] = {h.bbox.x, h.bbox.y, h.bbox.w, h.bbox.h};
    e["snippet"] = h.snippet;
    arr.push_back(std::move(e));
  }
  nlohmann::ordered_json j;
  j["hits"] = std::move(arr);
  return j.dump();
}

std::vector<text::SearchHit> hits_from_json(std::string_view json) {
  const auto j = protocol::detail::parse_json(json);
  std::vector<text::SearchHit> hits;
  for (const auto& e : array_field(j, "hits")) {
    text::SearchHit h;
    h.session = field<std::string>(e, "session");
    h.seq = field<std::uint64_t>(e, "seq");
    h.timestamp_ms = field<std::int64_t>(e, "ts_ms");
    h.url = field<std::string>(e, "url");
    const auto& b = array_field(e, "bbox");
    if (b.size() != 4) throw Error(ErrorCode::validation, "bbox must have 4 entries");
    h.bbox = {b[0].get<std::int64_t>(), b[1].get<std::int64_t>(), b[2].get<std::int64_t>(),
              b[3].get<std::int64_t>()};
    h.snippet = field<std::string>(e, "snippet");
    hits.push_back(std::move(h));
  }
  return hits;
}

std::string text_post_to_json(std::uint64_t seq, const std::vector<text::TextRun>& runs) {
  nlohmann::ordered_json j;
  j["seq"] = seq;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : runs) {
    arr.push_back({{"text", r.text},
                   {"x", r.bbox.x},
                   {"y", r.bbox.y},
                   {"w", r.bbox.w},
                   {"h", r.bbox.h},
                   {"url", r.url}});
  }
  j["runs"] = std::move(arr);
  return j.dump();
}

std::pair<std::uint64_t, std::vector<text::TextRun>> text_post_from_json(std::string_view json) {
  const auto j = protocol::detail::parse_json(json);
  if (!j.is_object()) throw Error(ErrorCode::validation, "text post must be a JSON object");
  const auto seq = field<std::uint64_t>(j, "seq");
  std::vector<text::TextRun> runs;
  for (const auto& e : array_field(j, "runs")) {
    text::TextRun r;
    r.text = field<std::string>(e, "text");
    r.bbox = {field<std::int64_t>(e, "x"), field<std::int64_t>(e, "y"),
              field<std::int64_t>(e, "w"), field<std::int64_t>(e, "h")};
    r.url = protocol::detail::field_or<std::string>(e, "url", "");
    r.seq = seq;
    if (r.text.empty()) throw Error(ErrorCode::validation, "text run must be non-empty");
    if (r.bbox.w <= 0 || r.bbox.h <= 0) {
      throw Error(ErrorCode::validation, "text run bbox w and h must be positive");
    }
    runs.push_back(std::move(r));
  }
  return {seq, std::move(runs)};
}

std::string ack_to_json(const Ack& ack) {
  nlohmann::ordered_json j;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : ack.missing) arr.push_back(s.hex());
  j["missing"] = std::move(arr);
  return j.dump();
}

Ack ack_from_json(std::string_view json) {
  const auto j = protocol::detail::parse_json(json);
  Ack ack;
  for (const auto& s : array_field(j, "missing")) {
    const auto sig = s.is_string() ? protocol::TileSignature::from_hex(s.get<std::string>())
                                   : std::nullopt;
    if (!sig) throw Error(ErrorCode::validation, "missing[] entries must be 32 hex characters");
    ack.missing.push_back(*sig);
  }
  return ack;
}

std::string recorded_update_line(const RecordedUpdate& r) {
  return std::to_string(r.wall_ms) + " " + protocol::serialize_update(r.update);
}

RecordedUpdate parse_recorded_update_line(std::string_view line) {
  const auto space = line.find(' ');
  if (space == std::string_view::npos) {
    throw ParseError(0, "recording line lacks a wall-clock prefix");
  }
  RecordedUpdate r;
  const auto [ptr, ec] = std::from_chars(line.data(), line.data() + space, r.wall_ms);
  if (ec != std::errc{} || ptr != line.data() + space) {
    throw ParseError(0, "recording line has a malformed wall-clock prefix");
  }
  r.update = protocol::deserialize_update(line.substr(space + 1));
  return r;
}

}  // namespace tilecast::relay
