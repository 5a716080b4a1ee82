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

#include <map>

#include "capture/page_document.hpp"
#include "core/error.hpp"
#include "relay/config.hpp"
#include "support.hpp"

using namespace tilecast;
using namespace tilecast::relay;

TEST_CASE("config file then environment") {
  testsupport::TempDir dir;
  const auto path = dir.path() / "relay.json";
  capture::write_file(path, R"({"port": 9000, "max_sessions": 3, "long_poll_cap_ms": 5000})");
  const auto c = load_relay_config(path);
  CHECK(c.port == 9000);
  CHECK(c.max_sessions == 3);
  CHECK(c.long_poll_cap_ms == 5000);
  CHECK(c.listen_address == "127.0.0.1");

  const std::map<std::string, std::string> env{{"TILECAST_PORT", "9100"},
                                               {"TILECAST_STORAGE_ROOT", "/tmp/x"}};
  const auto lookup = [&](const char* k) -> const char* {
    const auto it = env.find(k);
    return it == env.end() ? nullptr : it->second.c_str();
  };
  const auto o = apply_env_overrides(c, lookup);
  CHECK(o.port == 9100);
  CHECK(o.storage_root == "/tmp/x");
  CHECK(o.max_sessions == 3);
}

TEST_CASE("unknown keys and bad values are rejected") {
  testsupport::TempDir dir;
  const auto path = dir.path() / "relay.json";
  capture::write_file(path, R"({"prot": 9000})");
  CHECK_THROWS_AS(load_relay_config(path), Error);
  capture::write_file(path, R"({"port": "x"})");
  CHECK_THROWS_AS(load_relay_config(path), Error);
  const auto lookup = [](const char* k) -> const char* {
    return std::string(k) == "TILECAST_PORT" ? "eighty" : nullptr;
  };
  CHECK_THROWS_AS(apply_env_overrides({}, lookup), Error);
}

TEST_CASE("page documents load from a manifest") {
  testsupport::TempDir dir;
  bench::BenchmarkAssets assets;
  auto doc = testsupport::noise_page("https://doc.test/", 300, 500, 3);
  doc.text_runs = {{"hello world", {1, 2, 30, 8}, "https://doc.test/", 0}};
  assets.documents["d"] = doc;
  assets.script.events = {{0, capture::NavigateEvent{"d", {}, {}}}, {10, capture::EndEvent{}}};
  testsupport::write_assets(assets, dir.path());
  const auto loaded = capture::load_page_document(dir.path() / "docs" / "d.json");
  CHECK(loaded.url == doc.url);
  CHECK(loaded.raster == doc.raster);
  REQUIRE(loaded.text_runs.size() == 1);
  CHECK(loaded.text_runs[0].text == "hello world");
  CHECK(loaded.text_runs[0].bbox == doc.text_runs[0].bbox);

  try {
    capture::load_page_document(dir.path() / "docs" / "missing.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::load);
  }
}
