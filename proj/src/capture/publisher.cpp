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

#include "capture/publisher.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "capture/capture.hpp"
#include "capture/script_player.hpp"
#include "core/error.hpp"

namespace tilecast::capture {

std::uint64_t PublisherConfig::reference_every() const {
  if (reference_interval_s <= 0) return 0;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                        std::llround(reference_interval_s * tick_hz)));
}

namespace {

// Uploads the tick's tiles, then posts its update.
relay::Ack publish_tick(const std::string& session, CaptureResult& result,
                                     RelayTransport& transport, SentSet& sent,
                                     SessionStats& stats, TickLog& log) {
  std::vector<protocol::TileSignature> uploaded;
  for (const auto& record : result.tiles) {
    try {
      transport.put_tile(session, record);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::transport) throw;
      ++log.tiles_failed;
      continue;
    }
    sent.insert(record.signature);
    uploaded.push_back(record.signature);
    stats.uploads.push_back(record.signature);
  }
  log.tiles_uploaded = uploaded.size();
  stats.tiles_uploaded += uploaded.size();

  result.update.new_tiles = std::move(uploaded);
  const relay::Ack ack = transport.post_update(session, result.update);
  // The relay lost something we believed was stored; forget it so it is
  // uploaded again next time it is visible.
  for (const auto& sig : ack.missing) sent.erase(sig);
  return ack;
}

}  // namespace

SessionStats run_session(const SessionScript& script, const std::filesystem::path& docs_dir,
                         RelayTransport& transport, const PublisherConfig& config,
                         const SessionCallback& on_session) {
  if (config.tick_hz <= 0) throw Error(ErrorCode::invalid_argument, "tick rate must be positive");
  ScriptPlayer player(script, load_documents(script, docs_dir), docs_dir, config.viewport_width,
                      config.viewport_height);

  SessionStats stats;
  stats.duration_ms = script.duration_ms();
  stats.session_id = transport.create_session();
  if (on_session) on_session(stats.session_id);

  const std::uint64_t ticks = tick_count(script.duration_ms(), config.tick_hz);
  const std::uint64_t ref_every = config.reference_every();
  const auto start = std::chrono::steady_clock::now();

  SentSet sent;
  std::map<std::string, PageSignatures> signatures;
  relay::Ack last_ack;
  protocol::UpdateMessage last_update;
  std::string last_doc;

  for (std::uint64_t k = 0; k < ticks; ++k) {
    const std::int64_t t = tick_time_ms(k, config.tick_hz);
    if (config.realtime) std::this_thread::sleep_until(start + std::chrono::milliseconds(t));

    Frame frame = player.advance_to(t);
    for (const auto& m : frame.mutations) {
      auto it = signatures.find(m.document_id);
      if (it != signatures.end()) {
        refresh_signatures(it->second, player.document(m.document_id), m.x, m.y, m.w, m.h);
      }
    }
    auto sig_it = signatures.find(frame.document_id);
    if (sig_it == signatures.end()) {
      sig_it = signatures.emplace(frame.document_id, compute_page_signatures(*frame.document)).first;
    }

    const std::uint64_t seq = k + 1;
    const bool reference = ref_every > 0 && k > 0 && k % ref_every == 0;
    CaptureResult result =
        reference ? reference_capture(*frame.document, sig_it->second, frame.viewport,
                                      frame.cursor, seq, t, config.codec)
                  : capture_tick(*frame.document, sig_it->second, frame.viewport, frame.cursor,
                                 sent, seq, t, config.codec);

    TickLog log;
    log.seq = seq;
    log.ts_ms = t;
    log.reference = reference;
    const relay::TrafficLog before = transport.traffic();
    last_ack = publish_tick(stats.session_id, result, transport, sent, stats, log);
    last_update = std::move(result.update);
    last_doc = frame.document_id;

    if (frame.navigated && config.publish_text && !frame.document->text_runs.empty()) {
      auto runs = apply_privacy_filter(frame.document->text_runs, config.privacy);
      for (auto& r : runs) {
        r.url = frame.document->url;
        r.seq = seq;
      }
      transport.post_text(stats.session_id, seq, runs);
      stats.text_runs_published += runs.size();
    }
    const relay::TrafficLog after = transport.traffic();
    log.requests = after.requests - before.requests;
    log.body_bytes = after.body_bytes - before.body_bytes;
    stats.tick_log.push_back(log);
    ++stats.ticks;
  }

  if (config.drain_missing_on_end && stats.ticks > 0) {
    // The last ack lists what the relay still lacks for the final page.
    const auto& doc = player.document(last_doc);
    const auto& sigs = signatures.at(last_doc);
    std::map<protocol::TileSignature, protocol::TilePos> where;
    for (const auto& [pos, sig] : last_update.tile_map) where.emplace(sig, pos);
    for (const auto& sig : last_ack.missing) {
      const auto it = where.find(sig);
      if (it == where.end() || sigs.at(it->second) != sig) continue;
      const auto rect = protocol::tile_rect(it->second, doc.raster.width, doc.raster.height);
      const auto record = protocol::encode_tile(
          sig, doc.raster.crop(rect.x, rect.y, rect.width, rect.height), config.codec);
      transport.put_tile(stats.session_id, record);
      stats.uploads.push_back(sig);
      ++stats.tiles_uploaded;
    }
  }

  transport.end_session(stats.session_id);
  const relay::TrafficLog total = transport.traffic();
  stats.requests = total.requests;
  stats.body_bytes = total.body_bytes;
  return stats;
}

}  // namespace tilecast::capture
