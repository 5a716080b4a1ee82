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

// Exercises the shared library through its public C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tilecast/tilecast.h"

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("tilecast-capi-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

bool contains(const char* haystack, const char* needle) {
  return haystack && std::strstr(haystack, needle) != nullptr;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(tc_version()).size() > 0);
  CHECK(std::string(tc_status_name(TC_OK)) == "ok");
  CHECK(std::string(tc_status_name(TC_ERR_SEQUENCE)) == "sequence");
  tc_string_free(nullptr);
}

TEST_CASE("md5 and tile signatures") {
  char hex[TC_HEX_DIGEST_LEN];
  REQUIRE(tc_md5_hex("abc", 3, hex) == TC_OK);
  CHECK(std::string(hex) == "900150983cd24fb0d6963f7d28e17f72");

  // Signature preimage: url NUL "col,row" NUL rgba.
  const std::vector<std::uint8_t> rgba(4, 200);
  std::string preimage = std::string("u") + '\0' + "1,2" + '\0';
  preimage.append(rgba.begin(), rgba.end());
  char expect[TC_HEX_DIGEST_LEN];
  tc_md5_hex(preimage.data(), preimage.size(), expect);
  REQUIRE(tc_tile_signature("u", 1, 2, 1, 1, rgba.data(), rgba.size(), hex) == TC_OK);
  CHECK(std::string(hex) == expect);

  CHECK(tc_tile_signature("u", 1, 2, 2, 2, rgba.data(), rgba.size(), hex) ==
        TC_ERR_INVALID_PIXEL_BUFFER);
  CHECK(std::string(tc_last_error()).size() > 0);
  CHECK(tc_tile_signature("u", -1, 0, 1, 1, rgba.data(), rgba.size(), hex) ==
        TC_ERR_INVALID_GEOMETRY);
  CHECK(tc_md5_hex(nullptr, 3, hex) == TC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("grid and visible tiles") {
  int64_t cols = 0, rows = 0;
  REQUIRE(tc_grid_size(1024, 3000, &cols, &rows) == TC_OK);
  CHECK(cols == 4);
  CHECK(rows == 12);
  CHECK(tc_grid_size(0, 5, &cols, &rows) == TC_ERR_INVALID_GEOMETRY);

  int64_t pairs[64];
  size_t count = 0;
  REQUIRE(tc_visible_tiles(1024, 768, 0, 768, 1024, 3000, pairs, 32, &count) == TC_OK);
  CHECK(count == 12);
  CHECK(pairs[0] == 0);
  CHECK(pairs[1] == 3);
  CHECK(pairs[2 * 11 + 1] == 5);
  CHECK(tc_visible_tiles(1024, 768, 0, 768, 1024, 3000, pairs, 2, &count) == TC_ERR_CAPACITY);
  CHECK(count == 12);
}

TEST_CASE("relay lifecycle, publish and bench through the C API") {
  TempDir dir;
  const std::string assets = (dir.path / "bench").string();
  REQUIRE(tc_bench_generate(7, assets.c_str()) == TC_OK);
  CHECK(std::filesystem::exists(dir.path / "bench" / "script.jsonl"));
  CHECK(std::filesystem::exists(dir.path / "bench" / "docs" / "page0.png"));

  tc_relay_config cfg;
  tc_relay_config_init(&cfg);
  cfg.port = 0;
  cfg.listen_address = "127.0.0.1";
  const std::string store = (dir.path / "store").string();
  std::filesystem::create_directories(store);
  cfg.storage_root = store.c_str();
  tc_relay* relay = nullptr;
  REQUIRE(tc_relay_create(&cfg, &relay) == TC_OK);
  REQUIRE(tc_relay_start(relay) == TC_OK);
  const std::string url = "http://127.0.0.1:" + std::to_string(tc_relay_port(relay));

  // A short hand-written session over one generated page.
  const auto script = dir.path / "short.jsonl";
  {
    std::FILE* f = std::fopen(script.c_str(), "w");
    REQUIRE(f);
    std::fputs("{\"t_ms\":0,\"ev\":\"navigate\",\"doc\":\"page0\"}\n"
               "{\"t_ms\":500,\"ev\":\"scroll\",\"x\":0,\"y\":600}\n"
               "{\"t_ms\":2000,\"ev\":\"end\"}\n",
               f);
    std::fclose(f);
  }
  tc_publish_options po;
  tc_publish_options_init(&po);
  po.server_url = url.c_str();
  const std::string script_s = script.string();
  const std::string docs = (dir.path / "bench" / "docs").string();
  po.script_path = script_s.c_str();
  po.docs_dir = docs.c_str();
  char* out = nullptr;
  REQUIRE(tc_publish(&po, &out) == TC_OK);
  CHECK(contains(out, "\"ticks\": 8"));
  tc_string_free(out);

  tc_bench_options bo;
  tc_bench_options_init(&bo);
  bo.mode = "fullframe";
  bo.script_path = script_s.c_str();
  bo.docs_dir = docs.c_str();
  out = nullptr;
  REQUIRE(tc_bench_run(&bo, &out) == TC_OK);
  CHECK(contains(out, "\"mode\": \"fullframe-jpeg\""));
  CHECK(contains(out, "\"context_kbps\""));
  tc_string_free(out);

  bo.mode = "tiled";
  bo.server_url = url.c_str();
  out = nullptr;
  REQUIRE(tc_bench_run(&bo, &out) == TC_OK);
  CHECK(contains(out, "\"mode\": \"tiled\""));
  tc_string_free(out);

  bo.mode = "sideways";
  CHECK(tc_bench_run(&bo, &out) == TC_ERR_INVALID_ARGUMENT);

  po.script_path = "/nonexistent/script.jsonl";
  CHECK(tc_publish(&po, nullptr) != TC_OK);

  CHECK(tc_relay_stop(relay) == TC_OK);
  tc_relay_destroy(relay);
}

TEST_CASE("unreachable relay is a transport error") {
  TempDir dir;
  REQUIRE(tc_bench_generate(1, dir.path.c_str()) == TC_OK);
  tc_publish_options po;
  tc_publish_options_init(&po);
  po.server_url = "http://127.0.0.1:1";
  const std::string script = (dir.path / "script.jsonl").string();
  po.script_path = script.c_str();
  // The default retry policy gives up after roughly 3 s of backoff.
  CHECK(tc_publish(&po, nullptr) == TC_ERR_TRANSPORT);
}
