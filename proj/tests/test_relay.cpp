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

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

#include "core/error.hpp"
#include "relay/session_registry.hpp"
#include "support.hpp"

using namespace tilecast;
using namespace tilecast::relay;
using testsupport::fake_signature;
using testsupport::synthetic_update;

namespace {

protocol::TileRecord tile_for(const protocol::TileSignature& sig, std::uint8_t shade = 9) {
  return protocol::encode_tile(sig, protocol::Raster(16, 16, {shade, shade, shade, 255}),
                               protocol::CodecPolicy::png());
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("ids are 8 lowercase alphanumerics and unique") {
  Relay relay(RelayConfig{});
  std::set<std::string> ids;
  for (int i = 0; i < 50; ++i) {
    const auto id = relay.create_session();
    CHECK(id.size() == 8);
    CHECK(id.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789") == std::string::npos);
    ids.insert(id);
  }
  CHECK(ids.size() == 50);
  CHECK(relay.live_sessions() == 50);
}

TEST_CASE("session capacity is enforced and freed by end") {
  RelayConfig cfg;
  cfg.max_sessions = 2;
  Relay relay(cfg);
  const auto a = relay.create_session();
  relay.create_session();
  CHECK(code_of([&] { relay.create_session(); }) == ErrorCode::capacity);
  relay.end_session(a);
  CHECK_NOTHROW(relay.create_session());
}

TEST_CASE("sequence numbers must be contiguous") {
  Relay relay(RelayConfig{});
  const auto id = relay.create_session();
  relay.ingest_update(id, synthetic_update(1, 0, 512, 512, 0, 1));
  try {
    relay.ingest_update(id, synthetic_update(3, 10, 512, 512, 0, 1));
    FAIL("expected a sequence error");
  } catch (const SequenceError& e) {
    CHECK(e.expected() == 2);
  }
  relay.ingest_update(id, synthetic_update(2, 50, 512, 512, 0, 1));
  CHECK(code_of([&] { relay.ingest_update(id, synthetic_update(3, 49, 512, 512, 0, 1)); }) ==
        ErrorCode::validation);
  CHECK(relay.get_recording(id).entries.size() == 2);
  CHECK(code_of([&] { relay.ingest_update("zzzzzzzz", synthetic_update(1, 0, 9, 9, 0, 1)); }) ==
        ErrorCode::not_found);
}

TEST_CASE("ack lists referenced signatures that have no payload") {
  Relay relay(RelayConfig{});
  const auto id = relay.create_session();
  const auto u = synthetic_update(1, 0, 512, 512, 0, 1);  // 2x2 grid
  relay.put_tile(id, tile_for(u.tile_map.at({0, 0})));
  const auto ack = relay.ingest_update(id, u);
  CHECK(ack.missing.size() == 3);
  CHECK(std::find(ack.missing.begin(), ack.missing.end(), u.tile_map.at({0, 0})) ==
        ack.missing.end());

  // Duplicate signatures in one tile_map are reported once.
  auto dup = synthetic_update(2, 10, 512, 512, 0, 1);
  dup.tile_map[{1, 1}] = dup.tile_map.at({1, 0});
  CHECK(relay.ingest_update(id, dup).missing.size() == 2);
}

TEST_CASE("tile visibility is per session") {
  Relay relay(RelayConfig{});
  const auto a = relay.create_session();
  const auto b = relay.create_session();
  const auto sig = fake_signature(5, 0, 0);
  CHECK(relay.put_tile(a, tile_for(sig)) == TileStore::PutResult::stored);
  CHECK(relay.get_tile(a, sig)->signature == sig);
  CHECK(code_of([&] { relay.get_tile(b, sig); }) == ErrorCode::not_found);

  // Referencing a stored signature makes it visible without re-upload.
  auto u = synthetic_update(1, 0, 256, 256, 0, 5);
  REQUIRE(u.tile_map.at({0, 0}) == sig);
  CHECK(relay.ingest_update(b, u).missing.empty());
  CHECK(relay.get_tile(b, sig)->signature == sig);
  CHECK(relay.put_tile(b, tile_for(sig)) == TileStore::PutResult::duplicate);
}

TEST_CASE("conflicting bytes for one signature are an integrity error") {
  Relay relay(RelayConfig{});
  const auto a = relay.create_session();
  const auto sig = fake_signature(6, 0, 0);
  relay.put_tile(a, tile_for(sig, 1));
  CHECK(code_of([&] { relay.put_tile(a, tile_for(sig, 2)); }) == ErrorCode::integrity);
}

TEST_CASE("tiles are released when no live session holds them") {
  Relay relay(RelayConfig{});
  const auto a = relay.create_session();
  const auto b = relay.create_session();
  const auto sig = fake_signature(7, 0, 0);
  relay.put_tile(a, tile_for(sig));
  relay.ingest_update(b, synthetic_update(1, 0, 256, 256, 0, 7));
  CHECK(relay.tiles().size() == 1);
  relay.end_session(a);
  CHECK(relay.tiles().contains(sig));
  // In-memory mode keeps ended sessions replayable.
  CHECK(relay.get_tile(a, sig)->signature == sig);
}

TEST_CASE("ended sessions reject writes") {
  Relay relay(RelayConfig{});
  const auto id = relay.create_session();
  relay.ingest_update(id, synthetic_update(1, 0, 256, 256, 0, 1));
  const auto summary = relay.end_session(id);
  CHECK(summary.updates == 1);
  CHECK(code_of([&] { relay.end_session(id); }) == ErrorCode::conflict);
  CHECK(code_of([&] { relay.ingest_update(id, synthetic_update(2, 5, 256, 256, 0, 1)); }) ==
        ErrorCode::conflict);
  CHECK(code_of([&] { relay.put_tile(id, tile_for(fake_signature(1, 0, 0))); }) ==
        ErrorCode::conflict);
  CHECK(relay.get_recording(id).status == SessionStatus::ended);
}

TEST_CASE("get_state statuses") {
  Relay relay(RelayConfig{});
  const auto id = relay.create_session();
  CHECK(relay.get_state(id, 0, 0).status == "not-ready");
  relay.ingest_update(id, synthetic_update(1, 0, 256, 256, 0, 1));
  auto r = relay.get_state(id, 0, 0);
  CHECK(r.status == "ok");
  CHECK(r.update->seq == 1);
  CHECK(relay.get_state(id, 1, 0).status == "timeout");
  relay.end_session(id);
  CHECK(relay.get_state(id, 1, 1000).status == "ended");
  CHECK(relay.get_state(id, 0, 0).update->seq == 1);
}

TEST_CASE("long-poll wakes on ingest and respects the cap") {
  RelayConfig cfg;
  cfg.long_poll_cap_ms = 300;
  Relay relay(cfg);
  const auto id = relay.create_session();
  relay.ingest_update(id, synthetic_update(1, 0, 256, 256, 0, 1));

  const auto t0 = std::chrono::steady_clock::now();
  const auto capped = relay.get_state(id, 1, 10000);
  const auto waited = std::chrono::steady_clock::now() - t0;
  CHECK(capped.status == "timeout");
  CHECK(waited >= std::chrono::milliseconds(290));
  CHECK(waited < std::chrono::milliseconds(2000));

  std::thread poster([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    relay.ingest_update(id, synthetic_update(2, 10, 256, 256, 0, 1));
  });
  const auto t1 = std::chrono::steady_clock::now();
  const auto woke = relay.get_state(id, 1, 10000);
  const auto latency = std::chrono::steady_clock::now() - t1;
  poster.join();
  CHECK(woke.status == "ok");
  CHECK(woke.update->seq == 2);
  CHECK(latency < std::chrono::milliseconds(290));
}

TEST_CASE("shutdown releases blocked polls") {
  Relay relay(RelayConfig{});
  const auto id = relay.create_session();
  std::thread stopper([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    relay.shutdown();
  });
  const auto t0 = std::chrono::steady_clock::now();
  CHECK(relay.get_state(id, 0, 20000).status == "not-ready");
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(5));
  stopper.join();
}

TEST_CASE("recording seeks return the floor update") {
  Relay relay(RelayConfig{});
  const auto id = relay.create_session();
  const std::int64_t ts[] = {100, 250, 250, 900};
  for (std::uint64_t i = 0; i < 4; ++i) {
    relay.ingest_update(id, synthetic_update(i + 1, ts[i], 256, 256, 0, 1));
  }
  CHECK_FALSE(relay.get_recording_state(id, 99).has_value());
  CHECK(relay.get_recording_state(id, 100)->seq == 1);
  CHECK(relay.get_recording_state(id, 300)->seq == 3);
  CHECK(relay.get_recording_state(id, 100000)->seq == 4);
  const auto m = relay.get_recording(id);
  CHECK(m.duration_ms == 900);
  CHECK(m.entries.size() == 4);
  CHECK(m.status == SessionStatus::live);
}

TEST_CASE("text is indexed against an existing update") {
  Relay relay(RelayConfig{});
  const auto id = relay.create_session();
  const std::vector<text::TextRun> runs{{"quarterly budget", {1, 2, 3, 4}, "https://u/", 1}};
  CHECK(code_of([&] { relay.index_text(id, 1, runs); }) == ErrorCode::validation);
  relay.ingest_update(id, synthetic_update(1, 777, 256, 256, 0, 1));
  CHECK(relay.index_text(id, 1, runs) == 1);
  const auto hits = relay.search("budget", 10);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].session == id);
  CHECK(hits[0].timestamp_ms == 777);
}

TEST_CASE("traffic accounting per session") {
  Relay relay(RelayConfig{});
  const auto id = relay.create_session();
  relay.log_request(id, 100);
  relay.log_request(id, 23);
  CHECK(relay.traffic(id).requests == 2);
  CHECK(relay.traffic(id).body_bytes == 123);
}
