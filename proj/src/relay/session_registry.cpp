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

#include "relay/session_registry.hpp"

#include <openssl/rand.h>

#include <algorithm>

#include "core/error.hpp"

namespace tilecast::relay {

namespace {

std::int64_t wall_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

[[noreturn]] void unknown_session(const std::string& id) {
  throw Error(ErrorCode::not_found, "unknown session '" + id + "'");
}

RecordingManifest make_manifest(const std::string& id, SessionStatus status,
                                const SessionRecording& rec) {
  RecordingManifest m;
  m.id = id;
  m.status = status;
  m.duration_ms = rec.duration_ms;
  m.entries.reserve(rec.updates.size());
  for (const auto& r : rec.updates) m.entries.push_back({r.update.seq, r.update.timestamp_ms});
  return m;
}

void index_archived_text(text::TextIndex& index, const std::string& id,
                         const std::vector<text::IndexedRun>& runs) {
  std::size_t i = 0;
  while (i < runs.size()) {
    std::size_t j = i;
    std::vector<text::TextRun> group;
    while (j < runs.size() && runs[j].run.seq == runs[i].run.seq) group.push_back(runs[j++].run);
    index.index_runs(id, runs[i].run.seq, runs[i].timestamp_ms, group);
    i = j;
  }
}

}  // namespace

Relay::Relay(RelayConfig config) : config_(std::move(config)) {
  if (!config_.storage_root.empty()) {
    storage_ = std::make_unique<RecordingStore>(config_.storage_root);
    for (const auto& id : storage_->list()) index_archived_text(index_, id, storage_->read_text(id));
  }
}

Relay::~Relay() { shutdown(); }

std::string Relay::fresh_id() {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
  constexpr unsigned kAlphabetSize = sizeof(kAlphabet) - 1;
  // Largest multiple of 36 below 256; bytes at or above it are redrawn.
  constexpr unsigned kLimit = 256 - 256 % kAlphabetSize;
  std::string id;
  while (id.size() < 8) {
    unsigned char buf[16];
    if (RAND_bytes(buf, sizeof buf) != 1) throw Error(ErrorCode::io, "RAND_bytes failed");
    for (unsigned char b : buf) {
      if (b < kLimit && id.size() < 8) id.push_back(kAlphabet[b % kAlphabetSize]);
    }
  }
  return id;
}

std::string Relay::create_session() {
  std::unique_lock lock(sessions_mutex_);
  if (live_count_ >= config_.max_sessions) {
    throw Error(ErrorCode::capacity,
                "relay already hosts " + std::to_string(live_count_) + " live sessions");
  }
  std::string id;
  do {
    id = fresh_id();
  } while (sessions_.contains(id) || (storage_ && storage_->exists(id)));
  auto s = std::make_shared<Session>();
  s->id = id;
  sessions_.emplace(id, std::move(s));
  ++live_count_;
  return id;
}

Relay::SessionPtr Relay::find_session(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Relay::SessionPtr Relay::require_session(const std::string& id) const {
  auto s = find_session(id);
  if (!s) unknown_session(id);
  return s;
}

Relay::ArchivePtr Relay::find_archive(const std::string& id) {
  if (!storage_) return nullptr;
  std::lock_guard lock(archive_mutex_);
  for (auto it = archive_cache_.begin(); it != archive_cache_.end(); ++it) {
    if (it->first == id) {
      archive_cache_.splice(archive_cache_.begin(), archive_cache_, it);
      return archive_cache_.front().second;
    }
  }
  if (!storage_->exists(id)) return nullptr;
  auto archive = std::make_shared<const ArchivedSession>(storage_->read(id));
  archive_cache_.emplace_front(id, archive);
  while (archive_cache_.size() > std::max<std::size_t>(config_.recording_cache, 1)) {
    archive_cache_.pop_back();
  }
  return archive;
}

Ack Relay::ingest_update(const std::string& id, protocol::UpdateMessage update) {
  protocol::validate_update(update);
  const auto s = require_session(id);
  Ack ack;
  {
    std::lock_guard lock(s->mutex);
    if (s->status == SessionStatus::ended) {
      throw Error(ErrorCode::conflict, "session '" + id + "' has ended");
    }
    const std::uint64_t expected = s->recording.updates.size() + 1;
    if (update.seq != expected) throw SequenceError(expected, update.seq);
    if (!s->recording.updates.empty() &&
        update.timestamp_ms < s->recording.updates.back().update.timestamp_ms) {
      throw Error(ErrorCode::validation, "timestamp_ms went backwards at seq " +
                                             std::to_string(update.seq));
    }
    for (const auto& [pos, sig] : update.tile_map) {
      if (s->held.contains(sig)) continue;
      if (tiles_.retain(sig)) {
        s->held.insert(sig);
      } else if (std::find(ack.missing.begin(), ack.missing.end(), sig) == ack.missing.end()) {
        ack.missing.push_back(sig);
      }
    }
    s->recording.duration_ms = update.timestamp_ms;
    s->recording.updates.push_back({wall_clock_ms(), std::move(update)});
  }
  s->changed.notify_all();
  return ack;
}

TileStore::PutResult Relay::put_tile(const std::string& id, const protocol::TileRecord& record) {
  const auto s = require_session(id);
  std::lock_guard lock(s->mutex);
  if (s->status == SessionStatus::ended) {
    throw Error(ErrorCode::conflict, "session '" + id + "' has ended");
  }
  const bool first = !s->held.contains(record.signature);
  const auto result = tiles_.put(record, first);
  if (first) s->held.insert(record.signature);
  return result;
}

RecordingSummary Relay::end_session(const std::string& id) {
  const auto s = require_session(id);
  RecordingSummary summary;
  std::shared_ptr<ArchivedSession> archive;
  {
    std::lock_guard lock(s->mutex);
    if (s->status == SessionStatus::ended) {
      throw Error(ErrorCode::conflict, "session '" + id + "' already ended");
    }
    s->status = SessionStatus::ended;
    summary = {id, s->recording.updates.size(), s->recording.duration_ms};
    if (storage_) {
      archive = std::make_shared<ArchivedSession>();
      archive->id = id;
      archive->recording = s->recording;
      for (const auto& sig : s->held) {
        if (auto tile = tiles_.get(sig)) archive->tiles.emplace(sig, std::move(tile));
      }
      archive->text = index_.runs_for_session(id);
    }
  }
  s->changed.notify_all();
  {
    std::unique_lock lock(sessions_mutex_);
    --live_count_;
  }
  if (!storage_) return summary;

  storage_->write(*archive);
  {
    std::lock_guard lock(archive_mutex_);
    archive_cache_.emplace_front(id, archive);
    while (archive_cache_.size() > std::max<std::size_t>(config_.recording_cache, 1)) {
      archive_cache_.pop_back();
    }
  }
  std::lock_guard session_lock(s->mutex);
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_.erase(id);
    evicted_traffic_[id] = s->traffic;
  }
  for (const auto& sig : s->held) tiles_.release(sig);
  s->held.clear();
  return summary;
}

StateResult Relay::get_state(const std::string& id, std::uint64_t since, std::int64_t wait_ms) {
  const auto s = find_session(id);
  if (!s) {
    const auto archive = find_archive(id);
    if (!archive) unknown_session(id);
    const auto& ups = archive->recording.updates;
    if (!ups.empty() && ups.back().update.seq > since) return {ups.back().update, "ok"};
    return {std::nullopt, "ended"};
  }
  const auto wait = std::chrono::milliseconds(std::clamp<std::int64_t>(wait_ms, 0, config_.long_poll_cap_ms));
  const auto deadline = std::chrono::steady_clock::now() + wait;
  std::unique_lock lock(s->mutex);
  const auto ready = [&] {
    return (!s->recording.updates.empty() && s->recording.updates.back().update.seq > since) ||
           s->status == SessionStatus::ended || stopping_.load();
  };
  if (wait.count() > 0) s->changed.wait_until(lock, deadline, ready);
  const auto& ups = s->recording.updates;
  if (!ups.empty() && ups.back().update.seq > since) return {ups.back().update, "ok"};
  if (s->status == SessionStatus::ended) return {std::nullopt, "ended"};
  return {std::nullopt, ups.empty() ? "not-ready" : "timeout"};
}

TilePtr Relay::get_tile(const std::string& id, const protocol::TileSignature& sig) {
  if (const auto s = find_session(id)) {
    {
      std::lock_guard lock(s->mutex);
      if (s->held.contains(sig)) {
        if (auto tile = tiles_.get(sig)) return tile;
      }
    }
    // Evicted between lookup and lock: fall through to the archive.
  }
  const auto archive = find_archive(id);
  if (!archive) {
    if (!find_session(id)) unknown_session(id);
  } else if (const auto it = archive->tiles.find(sig); it != archive->tiles.end()) {
    return it->second;
  }
  throw Error(ErrorCode::not_found, "tile " + sig.hex() + " is not part of session '" + id + "'");
}

RecordingManifest Relay::get_recording(const std::string& id) {
  if (const auto s = find_session(id)) {
    std::lock_guard lock(s->mutex);
    return make_manifest(id, s->status, s->recording);
  }
  const auto archive = find_archive(id);
  if (!archive) unknown_session(id);
  return make_manifest(id, SessionStatus::ended, archive->recording);
}

std::optional<protocol::UpdateMessage> Relay::get_recording_state(const std::string& id,
                                                                  std::int64_t at_ms) {
  if (const auto s = find_session(id)) {
    std::lock_guard lock(s->mutex);
    const auto* u = s->recording.state_at(at_ms);
    return u ? std::optional(*u) : std::nullopt;
  }
  const auto archive = find_archive(id);
  if (!archive) unknown_session(id);
  const auto* u = archive->recording.state_at(at_ms);
  return u ? std::optional(*u) : std::nullopt;
}

std::size_t Relay::index_text(const std::string& id, std::uint64_t seq,
                              const std::vector<text::TextRun>& runs) {
  const auto s = require_session(id);
  std::lock_guard lock(s->mutex);
  if (s->status == SessionStatus::ended) {
    throw Error(ErrorCode::conflict, "session '" + id + "' has ended");
  }
  const auto& ups = s->recording.updates;
  if (seq < 1 || seq > ups.size()) {
    throw Error(ErrorCode::validation, "text refers to seq " + std::to_string(seq) +
                                           " but the session has " +
                                           std::to_string(ups.size()) + " updates");
  }
  // Held under the session lock so a concurrent end_session archives it.
  return index_.index_runs(id, seq, ups[seq - 1].update.timestamp_ms, runs);
}

std::vector<text::SearchHit> Relay::search(std::string_view query, std::size_t limit) const {
  return index_.search(query, limit);
}

void Relay::log_request(const std::string& id, std::uint64_t body_bytes) {
  const auto s = find_session(id);
  if (!s) return;
  std::lock_guard lock(s->mutex);
  ++s->traffic.requests;
  s->traffic.body_bytes += body_bytes;
}

TrafficLog Relay::traffic(const std::string& id) {
  if (const auto s = find_session(id)) {
    std::lock_guard lock(s->mutex);
    return s->traffic;
  }
  std::shared_lock lock(sessions_mutex_);
  const auto it = evicted_traffic_.find(id);
  if (it == evicted_traffic_.end()) unknown_session(id);
  return it->second;
}

bool Relay::has_session(const std::string& id) {
  return find_session(id) != nullptr || find_archive(id) != nullptr;
}

std::size_t Relay::live_sessions() const {
  std::shared_lock lock(sessions_mutex_);
  return live_count_;
}

void Relay::shutdown() {
  stopping_.store(true);
  std::vector<SessionPtr> all;
  {
    std::shared_lock lock(sessions_mutex_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  for (const auto& s : all) {
    // Taking the lock orders the flag store before any waiter's predicate check.
    { std::lock_guard lock(s->mutex); }
    s->changed.notify_all();
  }
}

}  // namespace tilecast::relay
